import random

import pytest

from mfkit.errors import NotAComplex, NotAcyclic
from mfkit.factorization import (compose, identity_morphism, is_null_homotopic, shift,
                                 trivial_factorizations, validate_factorization, zero_morphism)
from mfkit.instances import (example_library, random_morphism, random_nullhomotopic,
                             small_random_pairs)
from mfkit.matrix import PolyMatrix, reduce_matrix_mod
from mfkit.periodic import (PeriodicChainMap, PeriodicHomotopy, TwoPeriodicComplex, apply_T,
                            apply_T_morphism, check_periodic_homotopy, coker_presentation,
                            identity_chain_map, periodic_homotopic, shift_complex, verify_acyclic,
                            verify_total_acyclicity, zero_chain_map)
from mfkit.ring import PolyRing

S1 = PolyRing("x")
(t,) = S1.gens
S2 = PolyRing("x, y")
x, y = S2.gens
M = PolyMatrix

XX = validate_factorization(t * t, M(S1, [[t]]), M(S1, [[t]]))
XY = validate_factorization(x * y, M(S2, [[x]]), M(S2, [[y]]))


def test_apply_T_examples():
    c = apply_T(XX)
    assert c.a_bar == M(S1, [[t]]) and c.b_bar == M(S1, [[t]])
    one_f = trivial_factorizations(t * t)[0]
    c = apply_T(one_f)
    assert c.a_bar == M(S1, [[1]]) and c.b_bar.is_zero()


def test_non_complex_rejected():
    with pytest.raises(NotAComplex):
        TwoPeriodicComplex(t ** 3, M(S1, [[t]]), M(S1, [[t]]))


def test_acyclic_examples():
    cert = verify_acyclic(apply_T(XX))
    assert cert.size == 2
    plain, dual = verify_total_acyclicity(apply_T(XY))
    assert plain.tag == "plain" and dual.tag == "dual"
    assert apply_T(XY).transpose().a_bar == M(S2, [[y]])


def test_non_acyclic_complex_detected():
    # a = x, b = 0 over x^3: ker b is everything, im a is (x)
    c = TwoPeriodicComplex(t ** 3, M(S1, [[t]]), M(S1, [[0]]))
    with pytest.raises(NotAcyclic) as e:
        verify_acyclic(c)
    assert e.value.tag == "plain"


def test_coker_presentation():
    assert coker_presentation(XX) == M(S1, [[t]])
    assert coker_presentation(trivial_factorizations(t * t)[0]) == M(S1, [[1]])
    assert coker_presentation(XY) == M(S2, [[x]])


def test_periodic_homotopy_examples():
    c = apply_T(XX)
    m = PeriodicChainMap(c, c, M(S1, [[t]]), M(S1, [[t]]))
    assert periodic_homotopic(m, m) == PeriodicHomotopy(M(S1, [[0]]), M(S1, [[0]]))
    w = periodic_homotopic(m, zero_chain_map(c, c))
    assert w is not None
    assert periodic_homotopic(identity_chain_map(c), zero_chain_map(c, c)) is None


def test_functoriality():
    rng = random.Random(3)
    for p, q in small_random_pairs(rng, count=4):
        a = random_morphism(p, q, rng)
        b = random_morphism(p, p, rng)
        lhs = apply_T_morphism(compose(a, b))
        rhs0 = reduce_matrix_mod(a.alpha0 @ b.alpha0, p.f)
        rhs1 = reduce_matrix_mod(a.alpha1 @ b.alpha1, p.f)
        assert lhs.u0 == rhs0 and lhs.u1 == rhs1
        assert apply_T_morphism(identity_morphism(p)) == identity_chain_map(apply_T(p))
        assert apply_T_morphism(zero_morphism(p, q)) == zero_chain_map(apply_T(p), apply_T(q))


def test_T_commutes_with_shift():
    for p in example_library().values():
        assert apply_T(shift(p)) == shift_complex(apply_T(p))


def test_reduced_homotopy_is_periodic_homotopy():
    rng = random.Random(11)
    for p, q in small_random_pairs(rng, count=5):
        m, _ = random_nullhomotopic(p, q, rng)
        h = is_null_homotopic(m)
        tm = apply_T_morphism(m)
        w = PeriodicHomotopy(reduce_matrix_mod(h.h0, p.f), reduce_matrix_mod(h.h1, p.f))
        assert check_periodic_homotopy(tm, zero_chain_map(tm.source, tm.target), w)
