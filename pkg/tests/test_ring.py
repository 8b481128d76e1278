from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mfkit.errors import ContextMismatch, DimensionMismatch, NotDivisible, ParseError
from mfkit.matrix import PolyMatrix, adjugate, det, divide_exact_by_f, infer_degrees, mat_arith
from mfkit.ring import GF, QQ, Poly, PolyRing, evaluate_at_origin, poly_divmod

R = PolyRing("x, y")
x, y = R.gens


def test_difference_of_squares():
    assert (x + 1) * (x - 1) == x ** 2 - 1


def test_add_zero_is_identity():
    p = x * y + 3
    assert p + R.zero == p


def test_square_over_f2():
    F2 = PolyRing("x", GF(2))
    (t,) = F2.gens
    assert (t + 1) ** 2 == t ** 2 + 1


def test_rationals_are_reduced():
    p = R.parse("2/4*x")
    assert p.terms[(1, 0)] == Fraction(1, 2)


def test_residues_in_range():
    F = PolyRing("x", GF(7))
    p = F.parse("-1*x + 15")
    assert all(0 <= c < 7 for c in p.terms.values())
    assert p == F.parse("6*x + 1")


def test_context_mismatch():
    other = PolyRing("x, y", GF(101))
    with pytest.raises(ContextMismatch):
        x + other.gens[0]


def test_canonical_printing():
    p = R.parse("x^2 + 3*x*y - 1/2*y^3")
    assert str(p) == "-1/2*y^3 + x^2 + 3*x*y"
    assert str(R.parse("y - x")) == "-x + y"
    assert str(R.zero) == "0"
    assert R.parse(str(p)) == p


def test_parse_errors_carry_positions():
    with pytest.raises(ParseError) as e:
        R.parse("x + z", line=3, column=10)
    assert e.value.line == 3
    assert e.value.column == 14
    with pytest.raises(ParseError):
        R.parse("x +")


def test_evaluate_at_origin():
    assert evaluate_at_origin(x ** 2 + 3) == 3
    assert evaluate_at_origin(R.zero) == 0
    assert evaluate_at_origin(x * y) == 0


def test_divmod_roundtrip():
    q, r = poly_divmod(x ** 3 + x * y + 1, x + y)
    assert q * (x + y) + r == x ** 3 + x * y + 1


def test_divide_exact_by_f():
    f = x
    assert divide_exact_by_f(PolyMatrix(R, [[x ** 2]]), f) == PolyMatrix(R, [[x]])
    assert divide_exact_by_f(PolyMatrix(R, [[0]]), x ** 2 + y).is_zero()
    with pytest.raises(NotDivisible) as e:
        divide_exact_by_f(PolyMatrix(R, [[x ** 2 + x]]), x ** 2)
    assert e.value.position == (0, 0)


def test_matrix_products():
    assert mat_arith(PolyMatrix(R, [[x]]), PolyMatrix(R, [[y]]), "mul") == PolyMatrix(R, [[x * y]])
    a = PolyMatrix(R, [[x, y], [-y, x]])
    b = PolyMatrix(R, [[x, -y], [y, x]])
    assert a @ b == PolyMatrix.scalar(R, 2, x * x + y * y)
    assert a @ PolyMatrix.identity(R, 2) == a
    with pytest.raises(DimensionMismatch):
        a @ PolyMatrix(R, [[x, y]])


def test_zero_sized_shapes():
    m = PolyMatrix(R, [[]])
    assert m.shape == (1, 0)
    assert (PolyMatrix.zeros(R, 2, 0) @ PolyMatrix.zeros(R, 0, 3)).shape == (2, 3)


def test_det_and_adjugate():
    a = PolyMatrix(R, [[x, y, 1], [0, x, y], [y, 0, x]])
    assert a @ adjugate(a) == PolyMatrix.scalar(R, 3, det(a))


def test_infer_degrees():
    rows, cols = infer_degrees(PolyMatrix(R, [[x, y ** 2], [0, x]]))
    assert cols[0] - rows[0] == 1 and cols[1] - rows[0] == 2 and cols[1] - rows[1] == 1


# --- randomized ring axioms -------------------------------------------------

F101 = PolyRing("x, y, z", GF(101))
_monos = st.tuples(*(st.integers(0, 3) for _ in range(3)))
polys = st.dictionaries(_monos, st.integers(1, 100), max_size=5).map(lambda d: Poly(F101, d))
q_polys = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3)),
                          st.fractions(max_denominator=7).filter(bool), max_size=4).map(
    lambda d: Poly(R, d))


@settings(max_examples=60, deadline=None)
@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == F101.zero


@settings(max_examples=60, deadline=None)
@given(q_polys)
def test_print_parse_roundtrip(p):
    assert R.parse(str(p)) == p
    assert str(R.parse(str(p))) == str(p)


@settings(max_examples=30, deadline=None)
@given(st.lists(polys, min_size=4, max_size=4), polys.filter(lambda p: not p.is_zero()))
def test_divide_exact_roundtrip(entries, f):
    q = PolyMatrix(F101, [entries[:2], entries[2:]])
    assert divide_exact_by_f(q * f, f) == q


@settings(max_examples=30, deadline=None)
@given(st.lists(polys, min_size=12, max_size=12))
def test_matrix_associativity(e):
    a = PolyMatrix(F101, [e[0:2], e[2:4]])
    b = PolyMatrix(F101, [e[4:6], e[6:8]])
    c = PolyMatrix(F101, [e[8:10], e[10:12]])
    assert (a @ b) @ c == a @ (b @ c)
    i = PolyMatrix.identity(F101, 2)
    assert i @ a == a == a @ i


def test_qq_field_tag():
    assert QQ.tag() == "Q"
    assert GF(101).tag() == "F101"
