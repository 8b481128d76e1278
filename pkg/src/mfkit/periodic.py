"""Two-periodic complexes over R = S/(f) and the reduction functor T.

A complex is stored by its two differentials only:

    ... -> M1 --a--> M0 --b--> M1 --a--> M0 -> ...

Every matrix is kept in normal form modulo f, so equality of stored matrices
is equality over R.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DimensionMismatch, FMismatch, NoSolution, NotAComplex, NotAcyclic, VerificationFailed
from .factorization import LinearFactorization, MfMorphism
from .groebner import GREVLEX, GroebnerBasis, matrix_syzygies, solve_matrix_equation
from .matrix import PolyMatrix, reduce_matrix_mod


def _mod(m, f):
    return reduce_matrix_mod(m, f)


@dataclass(frozen=True)
class TwoPeriodicComplex:
    f: object
    a_bar: PolyMatrix  # M1 -> M0
    b_bar: PolyMatrix  # M0 -> M1

    def __post_init__(self):
        f = self.f
        object.__setattr__(self, "a_bar", _mod(self.a_bar, f))
        object.__setattr__(self, "b_bar", _mod(self.b_bar, f))
        a, b = self.a_bar, self.b_bar
        if a.ncols != b.nrows or b.ncols != a.nrows:
            raise DimensionMismatch(f"differentials {a.shape} and {b.shape} do not chain")
        if not _mod(a @ b, f).is_zero():
            raise NotAComplex("a*b is not 0 mod f")
        if not _mod(b @ a, f).is_zero():
            raise NotAComplex("b*a is not 0 mod f")

    @property
    def ranks(self):
        """(rank M0, rank M1)."""
        return self.a_bar.nrows, self.a_bar.ncols

    def transpose(self):
        """Hom(-, R) of the complex, reindexed so it again reads M1* -> M0* -> M1*."""
        return TwoPeriodicComplex(self.f, self.b_bar.T, self.a_bar.T)


@dataclass(frozen=True)
class PeriodicChainMap:
    source: TwoPeriodicComplex
    target: TwoPeriodicComplex
    u0: PolyMatrix  # M0 -> M0'
    u1: PolyMatrix  # M1 -> M1'

    def __post_init__(self):
        s, t = self.source, self.target
        if s.f != t.f:
            raise FMismatch("chain map between complexes over different rings")
        f = s.f
        object.__setattr__(self, "u0", _mod(self.u0, f))
        object.__setattr__(self, "u1", _mod(self.u1, f))
        (n0, n1), (m0, m1) = s.ranks, t.ranks
        if self.u0.shape != (m0, n0) or self.u1.shape != (m1, n1):
            raise DimensionMismatch("chain map components have the wrong shape")
        if not _mod(t.a_bar @ self.u1 - self.u0 @ s.a_bar, f).is_zero():
            raise NotAComplex("square through a does not commute mod f")
        if not _mod(t.b_bar @ self.u0 - self.u1 @ s.b_bar, f).is_zero():
            raise NotAComplex("square through b does not commute mod f")

    def __sub__(self, other):
        return PeriodicChainMap(self.source, self.target, self.u0 - other.u0, self.u1 - other.u1)


@dataclass(frozen=True)
class PeriodicHomotopy:
    """s0: M0 -> M1' and s1: M1 -> M0', read mod f."""

    s0: PolyMatrix
    s1: PolyMatrix


@dataclass
class AcyclicityCertificate:
    """For each position, kernel generators with their preimages."""

    tag: str
    at_m0: list = field(default_factory=list)
    at_m1: list = field(default_factory=list)

    @property
    def size(self):
        return len(self.at_m0) + len(self.at_m1)


def apply_T(p: LinearFactorization) -> TwoPeriodicComplex:
    return TwoPeriodicComplex(p.f, p.d1, p.d0)


def apply_T_morphism(m: MfMorphism) -> PeriodicChainMap:
    return PeriodicChainMap(apply_T(m.source), apply_T(m.target), m.alpha0, m.alpha1)


def shift_complex(c: TwoPeriodicComplex) -> TwoPeriodicComplex:
    return TwoPeriodicComplex(c.f, -c.b_bar, -c.a_bar)


def zero_chain_map(s: TwoPeriodicComplex, t: TwoPeriodicComplex) -> PeriodicChainMap:
    ring = s.a_bar.ring
    (n0, n1), (m0, m1) = s.ranks, t.ranks
    return PeriodicChainMap(s, t, PolyMatrix.zeros(ring, m0, n0), PolyMatrix.zeros(ring, m1, n1))


def identity_chain_map(c: TwoPeriodicComplex) -> PeriodicChainMap:
    ring = c.a_bar.ring
    n0, n1 = c.ranks
    return PeriodicChainMap(c, c, PolyMatrix.identity(ring, n0), PolyMatrix.identity(ring, n1))


def coker_presentation(p: LinearFactorization, which="d1") -> PolyMatrix:
    """The chosen differential mod f, read as a presentation over R."""
    if which not in ("d1", "d0"):
        raise ValueError("which must be 'd1' or 'd0'")
    return _mod(p.d1 if which == "d1" else p.d0, p.f)


def _exact_at(kernel_of: PolyMatrix, image_of: PolyMatrix, f, position, tag, order):
    """Check ker(kernel_of) == im(image_of) over R; return [(z, preimage)]."""
    ring = kernel_of.ring
    n = kernel_of.ncols
    if n == 0:
        return []
    ker = matrix_syzygies(kernel_of, f, order)
    if image_of.ncols == 0:
        gb = GroebnerBasis(ring, n, [], order, f)
    else:
        gb = GroebnerBasis(ring, n, image_of.columns(), order, f)
    certs = []
    for z in ker.columns():
        if image_of.ncols == 0:
            if gb.contains(z):
                certs.append((z, ()))
                continue
            raise NotAcyclic(position, z, tag)
        c = gb.lift(z)
        if c is None:
            raise NotAcyclic(position, z, tag)
        certs.append((z, tuple(c)))
    return certs


def verify_acyclic(c: TwoPeriodicComplex, order=GREVLEX, tag="plain") -> AcyclicityCertificate:
    """Exactness at M0 (ker b = im a) and at M1 (ker a = im b) over R."""
    cert = AcyclicityCertificate(tag)
    cert.at_m0 = _exact_at(c.b_bar, c.a_bar, c.f, "M0", tag, order)
    cert.at_m1 = _exact_at(c.a_bar, c.b_bar, c.f, "M1", tag, order)
    return cert


def verify_total_acyclicity(c: TwoPeriodicComplex, order=GREVLEX):
    """Acyclicity of c and of its R-dual; returns (plain, dual) certificates."""
    return verify_acyclic(c, order, "plain"), verify_acyclic(c.transpose(), order, "dual")


def _periodic_image(s, t, h: PeriodicHomotopy):
    f = s.f
    u0 = h.s1 @ s.b_bar + t.a_bar @ h.s0
    u1 = h.s0 @ s.a_bar + t.b_bar @ h.s1
    return _mod(u0, f), _mod(u1, f)


def check_periodic_homotopy(m1: PeriodicChainMap, m2: PeriodicChainMap, h: PeriodicHomotopy) -> bool:
    u0, u1 = _periodic_image(m1.source, m1.target, h)
    d = m1 - m2
    return u0 == d.u0 and u1 == d.u1


def periodic_homotopic(m1: PeriodicChainMap, m2: PeriodicChainMap, order=GREVLEX):
    """A 2-periodic homotopy (s0, s1) from m1 to m2 over R, or None.

    m1 - m2 == (s1 b + a' s0, s0 a + b' s1) mod f.
    """
    s, t = m1.source, m1.target
    if m2.source != s or m2.target != t:
        raise DimensionMismatch("chain maps have different endpoints")
    d = m1 - m2
    ring = s.a_bar.ring
    (n0, n1), (m0, mm1) = s.ranks, t.ranks
    shapes = [(mm1, n0), (m0, n1)]
    if d.u0.is_zero() and d.u1.is_zero():
        return PeriodicHomotopy(*(PolyMatrix.zeros(ring, r, c) for r, c in shapes))
    eqs = [
        [(None, 1, s.b_bar), (t.a_bar, 0, None)],
        [(None, 0, s.a_bar), (t.b_bar, 1, None)],
    ]
    try:
        s0, s1 = solve_matrix_equation(shapes, eqs, [d.u0, d.u1], s.f, order)
    except NoSolution:
        return None
    h = PeriodicHomotopy(_mod(s0, s.f), _mod(s1, s.f))
    if not check_periodic_homotopy(m1, m2, h):
        raise VerificationFailed("periodic homotopy does not re-verify")
    return h
