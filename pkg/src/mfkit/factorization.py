"""Matrix factorizations of f over S and their morphisms and homotopies.

A factorization is a pair of square matrices (d1, d0) with
d1 @ d0 == d0 @ d1 == f * I.  A morphism (alpha0, alpha1) satisfies
d1' alpha1 == alpha0 d1 and d0' alpha0 == alpha1 d0.  Two morphisms are
homotopic when alpha - beta == (h1 d0 + d1' h0, h0 d1 + d0' h1).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (AxiomFailed, ComposabilityMismatch, ContextMismatch, DimensionMismatch,
                     FMismatch, NoSolution, NotAMorphism, NotLocal, SignatureMismatch,
                     VerificationFailed, ZeroF)
from .groebner import GREVLEX, matrix_syzygies, solve_matrix_equation
from .matrix import PolyMatrix
from .ring import Poly, evaluate_at_origin


@dataclass(frozen=True, eq=False)
class LinearFactorization:
    """(d1: M1 -> M0, d0: M0 -> M1) with both composites equal to f.

    Build through :func:`validate_factorization`; the constructor itself does
    not check the axioms.
    """

    f: Poly
    d1: PolyMatrix
    d0: PolyMatrix

    @property
    def ring(self):
        return self.f.ring

    @property
    def rank(self):
        return self.d1.nrows

    def __eq__(self, other):
        return (isinstance(other, LinearFactorization) and self.f == other.f
                and self.d1 == other.d1 and self.d0 == other.d0)

    def __hash__(self):
        return hash((self.f, self.d1, self.d0))

    def __repr__(self):
        return f"LinearFactorization(f={self.f}, d1={self.d1}, d0={self.d0})"


@dataclass(frozen=True, eq=False)
class MfMorphism:
    source: LinearFactorization
    target: LinearFactorization
    alpha0: PolyMatrix
    alpha1: PolyMatrix

    def __post_init__(self):
        s, t = self.source, self.target
        if s.f != t.f:
            raise FMismatch("morphism between factorizations of different f")
        if self.alpha0.shape != (t.rank, s.rank) or self.alpha1.shape != (t.rank, s.rank):
            raise DimensionMismatch(f"morphism components must be {t.rank}x{s.rank}")
        if t.d1 @ self.alpha1 != self.alpha0 @ s.d1:
            raise NotAMorphism("d1' alpha1 != alpha0 d1")
        if t.d0 @ self.alpha0 != self.alpha1 @ s.d0:
            raise NotAMorphism("d0' alpha0 != alpha1 d0")

    def _same_signature(self, other):
        if not isinstance(other, MfMorphism):
            return False
        if other.source != self.source or other.target != self.target:
            raise SignatureMismatch("morphisms have different source or target")
        return True

    def __add__(self, other):
        if not self._same_signature(other):
            return NotImplemented
        return MfMorphism(self.source, self.target, self.alpha0 + other.alpha0,
                          self.alpha1 + other.alpha1)

    def __sub__(self, other):
        if not self._same_signature(other):
            return NotImplemented
        return MfMorphism(self.source, self.target, self.alpha0 - other.alpha0,
                          self.alpha1 - other.alpha1)

    def __neg__(self):
        return MfMorphism(self.source, self.target, -self.alpha0, -self.alpha1)

    def scale(self, c):
        return MfMorphism(self.source, self.target, self.alpha0 * c, self.alpha1 * c)

    def __eq__(self, other):
        return (isinstance(other, MfMorphism) and self.source == other.source
                and self.target == other.target and self.alpha0 == other.alpha0
                and self.alpha1 == other.alpha1)

    def __hash__(self):
        return hash((self.alpha0, self.alpha1))


@dataclass(frozen=True)
class Homotopy:
    """h0: M0 -> M1' and h1: M1 -> M0'."""

    h0: PolyMatrix
    h1: PolyMatrix


def validate_factorization(f, d1: PolyMatrix, d0: PolyMatrix) -> LinearFactorization:
    ring = d1.ring
    f = ring(f)
    if d0.ring != ring:
        raise ContextMismatch("d1 and d0 live in different rings")
    if f.is_zero():
        raise ZeroF("f must be nonzero")
    if evaluate_at_origin(f):
        raise NotLocal(f"f = {f} does not vanish at the origin")
    n = d1.nrows
    if d1.shape != (n, n) or d0.shape != (n, n):
        raise DimensionMismatch(f"d1 {d1.shape} and d0 {d0.shape} must be square of equal size")
    fI = PolyMatrix.scalar(ring, n, f)
    if d1 @ d0 != fI:
        raise AxiomFailed("d1*d0 = f*I")
    if d0 @ d1 != fI:
        raise AxiomFailed("d0*d1 = f*I")
    for name, d in (("d1", d1), ("d0", d0)):
        if n and matrix_syzygies(d).ncols:
            raise AxiomFailed(f"{name} injective", "columns have a nonzero syzygy")
    return LinearFactorization(f, d1, d0)


def trivial_factorizations(f):
    """The contractible rank-one objects (1, f) and (f, 1)."""
    ring = f.ring
    one = PolyMatrix(ring, [[ring.one]])
    ff = PolyMatrix(ring, [[f]])
    return validate_factorization(f, one, ff), validate_factorization(f, ff, one)


def zero_factorization(f) -> LinearFactorization:
    z = PolyMatrix.zeros(f.ring, 0, 0)
    return validate_factorization(f, z, z)


def shift(p: LinearFactorization) -> LinearFactorization:
    """Swap the two modules and negate both differentials."""
    return LinearFactorization(p.f, -p.d0, -p.d1)


def direct_sum(p: LinearFactorization, q: LinearFactorization) -> LinearFactorization:
    if p.f != q.f:
        raise FMismatch(f"{p.f} vs {q.f}")
    return LinearFactorization(p.f, PolyMatrix.block_diag(p.d1, q.d1),
                               PolyMatrix.block_diag(p.d0, q.d0))


def cone(m: MfMorphism) -> LinearFactorization:
    """c1 = [[-d0, 0], [a0, d1']], c0 = [[-d1, 0], [a1, d0']]."""
    s, t = m.source, m.target
    ring = s.ring
    z1 = PolyMatrix.zeros(ring, s.rank, t.rank)
    c1 = PolyMatrix.block([[-s.d0, z1], [m.alpha0, t.d1]])
    c0 = PolyMatrix.block([[-s.d1, z1], [m.alpha1, t.d0]])
    return validate_factorization(s.f, c1, c0)


def identity_morphism(p: LinearFactorization) -> MfMorphism:
    i = PolyMatrix.identity(p.ring, p.rank)
    return MfMorphism(p, p, i, i)


def zero_morphism(p: LinearFactorization, q: LinearFactorization) -> MfMorphism:
    z = PolyMatrix.zeros(p.ring, q.rank, p.rank)
    return MfMorphism(p, q, z, z)


def compose(m2: MfMorphism, m1: MfMorphism) -> MfMorphism:
    """m2 after m1."""
    if m1.target != m2.source:
        raise ComposabilityMismatch("target of the first map is not the source of the second")
    return MfMorphism(m1.source, m2.target, m2.alpha0 @ m1.alpha0, m2.alpha1 @ m1.alpha1)


def homotopy_image(p, q, h: Homotopy):
    """The pair (h1 d0 + d1' h0, h0 d1 + d0' h1) a homotopy contributes."""
    return h.h1 @ p.d0 + q.d1 @ h.h0, h.h0 @ p.d1 + q.d0 @ h.h1


def nullhomotopic_morphism(p, q, h: Homotopy) -> MfMorphism:
    a0, a1 = homotopy_image(p, q, h)
    return MfMorphism(p, q, a0, a1)


def check_homotopy(m1: MfMorphism, m2: MfMorphism, h: Homotopy) -> bool:
    a0, a1 = homotopy_image(m1.source, m1.target, h)
    return a0 == m1.alpha0 - m2.alpha0 and a1 == m1.alpha1 - m2.alpha1


def _homotopy_system(p, q, u0, u1, quotient=None, order=GREVLEX):
    n, m = p.rank, q.rank
    shapes = [(m, n), (m, n)]  # h0: M0 -> M1', h1: M1 -> M0'
    eqs = [
        [(None, 1, p.d0), (q.d1, 0, None)],
        [(None, 0, p.d1), (q.d0, 1, None)],
    ]
    h0, h1 = solve_matrix_equation(shapes, eqs, [u0, u1], quotient, order)
    return h0, h1


def is_null_homotopic(m: MfMorphism, order=GREVLEX):
    """A Homotopy with m == (h1 d0 + d1' h0, h0 d1 + d0' h1), or None."""
    p, q = m.source, m.target
    if p.rank == 0 or q.rank == 0:
        z = PolyMatrix.zeros(p.ring, q.rank, p.rank)
        return Homotopy(z, z)
    try:
        h0, h1 = _homotopy_system(p, q, m.alpha0, m.alpha1, order=order)
    except NoSolution:
        return None
    h = Homotopy(h0, h1)
    if not check_homotopy(m, zero_morphism(p, q), h):
        raise VerificationFailed("homotopy witness does not re-verify")
    return h


def homotopic(m1: MfMorphism, m2: MfMorphism, order=GREVLEX):
    """Homotopy from m1 to m2, or None."""
    return is_null_homotopic(m1 - m2, order)


def morphism_generators(p: LinearFactorization, q: LinearFactorization):
    """S-module generators of all strict morphisms p -> q."""
    ring = p.ring
    n, m = p.rank, q.rank
    if n == 0 or m == 0:
        return []
    # unknown vector is (vec alpha0, vec alpha1); map to the two commutator defects
    cols = []
    zero = ring.zero
    for u in range(2):
        for a in range(m):
            for b in range(n):
                e = PolyMatrix(ring, [[ring.one if (i, j) == (a, b) else zero for j in range(n)]
                                      for i in range(m)], (m, n))
                z = PolyMatrix.zeros(ring, m, n)
                a0, a1 = (e, z) if u == 0 else (z, e)
                top = q.d1 @ a1 - a0 @ p.d1
                bot = q.d0 @ a0 - a1 @ p.d0
                cols.append(tuple(x for row in top.rows for x in row)
                            + tuple(x for row in bot.rows for x in row))
    mat = PolyMatrix.from_columns(ring, cols, 2 * m * n)
    syz = matrix_syzygies(mat)
    out = []
    for c in syz.columns():
        a0 = PolyMatrix(ring, [list(c[i * n:(i + 1) * n]) for i in range(m)], (m, n))
        off = m * n
        a1 = PolyMatrix(ring, [list(c[off + i * n:off + (i + 1) * n]) for i in range(m)], (m, n))
        out.append(MfMorphism(p, q, a0, a1))
    return out
