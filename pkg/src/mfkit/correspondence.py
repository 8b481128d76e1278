"""Passing between factorizations, modules over R and chain maps over R.

Contains the lift of maps across S -> R, the construction of a factorization
from an R-module whose S-relation module is free, and the two algorithms that
turn homotopy information over R back into data over S.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (DimensionMismatch, IsoCheckFailed, NotAComplex, NotLocal, PdTooLarge,
                     VerificationFailed, ZeroF)
from .factorization import (Homotopy, LinearFactorization, MfMorphism, check_homotopy,
                            validate_factorization, zero_morphism)
from .groebner import GREVLEX, GroebnerBasis, matrix_syzygies, minimal_columns, solve_columns
from .matrix import PolyMatrix, divide_exact_by_f, reduce_matrix_mod
from .periodic import (PeriodicChainMap, PeriodicHomotopy, apply_T,
                       apply_T_morphism, check_periodic_homotopy, coker_presentation,
                       periodic_homotopic)
from .ring import evaluate_at_origin


@dataclass(frozen=True)
class ModulePresentation:
    """coker(relations); ``over`` is "S" or "R" (then f is the hypersurface)."""

    relations: PolyMatrix
    over: str = "S"
    f: object = None

    def __post_init__(self):
        if self.over not in ("S", "R"):
            raise ValueError("over must be 'S' or 'R'")
        if self.over == "R":
            if self.f is None or self.f.is_zero():
                raise ZeroF("an R-module needs a nonzero f")
            if evaluate_at_origin(self.f):
                raise NotLocal(f"f = {self.f} does not vanish at the origin")
            object.__setattr__(self, "relations", reduce_matrix_mod(self.relations, self.f))

    @property
    def ring(self):
        return self.relations.ring

    @property
    def ngens(self):
        return self.relations.nrows

    @property
    def quotient(self):
        return self.f if self.over == "R" else None

    @classmethod
    def free(cls, ring, rank, over="S", f=None):
        return cls(PolyMatrix.zeros(ring, rank, 0), over, f)

    @classmethod
    def residue_field(cls, ring, over="S", f=None):
        return cls(PolyMatrix(ring, [list(ring.gens)], (1, ring.nvars)), over, f)


def lift_matrix_mod_f(phi_bar: PolyMatrix, f) -> PolyMatrix:
    """Canonical representative over S: each entry's normal form modulo f."""
    return reduce_matrix_mod(phi_bar, f)


def s_presentation(m: ModulePresentation) -> ModulePresentation:
    """The same module seen over S: relations [A | f*I]."""
    if m.over != "R":
        raise ValueError("s_presentation needs an R-module")
    ring = m.ring
    fI = PolyMatrix.scalar(ring, m.ngens, m.f)
    rel = m.relations.hstack(fI) if m.relations.ncols else fI
    return ModulePresentation(rel, "S")


def eisenbud_factorization(m: ModulePresentation, order=GREVLEX) -> LinearFactorization:
    """Factorization (d1, d0) with coker(d1) isomorphic to m over R.

    d1 is a minimal basis of the S-relation module; it must be free, which is
    certified by an empty syzygy module, otherwise PdTooLarge.
    """
    if m.over != "R":
        raise ValueError("eisenbud_factorization needs an R-module")
    ring, f = m.ring, m.f
    n = m.ngens
    if n == 0:
        z = PolyMatrix.zeros(ring, 0, 0)
        return validate_factorization(f, z, z)
    rel = s_presentation(m).relations
    d1 = minimal_columns(rel, None, order)
    syz = matrix_syzygies(d1, None, order)
    if syz.ncols:
        raise PdTooLarge(f"relation module needs {d1.ncols} generators on {n} "
                         f"and has {syz.ncols} syzygies; it is not free")
    if d1.ncols != n:
        raise VerificationFailed(f"free relation module of rank {d1.ncols} on {n} generators")
    d0 = solve_columns(d1, PolyMatrix.scalar(ring, n, f), None, order)
    if d0 is None:
        raise VerificationFailed("f*I is not in the span of d1")
    return validate_factorization(f, d1, d0)


def faithfulness_nullhomotopy(m: MfMorphism, sigma) -> Homotopy:
    """Null-homotopy of m over S from a homotopy of T(m) to 0 over R.

    ``sigma`` is (s0, s1, s2): three consecutive diagonals, s0 and s2 on M0,
    s1 on M1.  A 2-periodic witness (s0, s1) may be passed, then s2 = s0.
    """
    p, q = m.source, m.target
    f = p.f
    if isinstance(sigma, (PeriodicHomotopy, Homotopy)):
        pair = (sigma.s0, sigma.s1) if isinstance(sigma, PeriodicHomotopy) else (sigma.h0, sigma.h1)
        sigma = (pair[0], pair[1], pair[0])
    elif len(sigma) == 2:
        sigma = (sigma[0], sigma[1], sigma[0])
    h0, h1, h2 = (lift_matrix_mod_f(s, f) for s in sigma)
    beta1 = divide_exact_by_f(m.alpha1 - q.d0 @ h1 - h0 @ p.d1, f)
    divide_exact_by_f(m.alpha0 - q.d1 @ h2 - h1 @ p.d0, f)
    s1 = h1 + q.d1 @ beta1
    h = Homotopy(h0, s1)
    if not check_homotopy(m, zero_morphism(p, q), h):
        raise VerificationFailed("constructed null-homotopy does not re-verify")
    return h


@dataclass
class Reconstruction:
    """Strict morphism gamma recovered from a chain map over R.

    ``sigma0``/``sigma1`` are the exact quotients of the two defects.
    ``periodic_witness`` certifies T(gamma) ~ input, or is None when no
    2-periodic homotopy exists.
    """

    gamma: MfMorphism
    sigma0: PolyMatrix
    sigma1: PolyMatrix
    input_map: PeriodicChainMap | None
    periodic_witness: PeriodicHomotopy | None


def fullness_reconstruct(p: LinearFactorization, q: LinearFactorization, alpha2, alpha1, alpha0,
                         order=GREVLEX) -> Reconstruction:
    """Strict morphism p -> q from three consecutive lifts of a chain map mod f.

    alpha2 and alpha0 act on M0, alpha1 on M1.  Raises NotDivisible when the
    input is not a chain map modulo f.
    """
    f = p.f
    n, k = p.rank, q.rank
    for a in (alpha2, alpha1, alpha0):
        if a.shape != (k, n):
            raise DimensionMismatch(f"chain map component must be {k}x{n}")
    sigma0 = divide_exact_by_f(alpha1 @ p.d0 - q.d0 @ alpha2, f)
    sigma1 = divide_exact_by_f(alpha0 @ p.d1 - q.d1 @ alpha1, f)
    g0 = alpha0 + q.d1 @ sigma0
    g1 = alpha1 + q.d0 @ sigma1 + sigma0 @ p.d1
    # MfMorphism checks both squares exactly
    gamma = MfMorphism(p, q, g0, g1)
    try:
        given = PeriodicChainMap(apply_T(p), apply_T(q), alpha0, alpha1)
    except NotAComplex:
        given = None
    witness = None
    if given is not None and reduce_matrix_mod(alpha2 - alpha0, f).is_zero():
        tg = apply_T_morphism(gamma)
        cand = PeriodicHomotopy(reduce_matrix_mod(sigma0, f), reduce_matrix_mod(sigma1, f))
        if check_periodic_homotopy(tg, given, cand):
            witness = cand
        else:
            witness = periodic_homotopic(tg, given, order)
    return Reconstruction(gamma, sigma0, sigma1, given, witness)


@dataclass
class RoundtripReport:
    source: LinearFactorization
    module: ModulePresentation
    result: LinearFactorization
    forward: PolyMatrix | None = None   # generators of coker(d1) written in coker(d1')
    backward: PolyMatrix | None = None
    contractible: bool = False
    notes: list = field(default_factory=list)


def _iso_maps(a: PolyMatrix, b: PolyMatrix, f, order):
    """Mutually inverse maps coker(a) <-> coker(b) over R from the identity on generators.

    Both presentations here share the generator set, so the candidate map is
    the identity; it is well defined in each direction when each relation
    column lies in the other span.
    """
    ring = a.ring
    n = a.nrows
    for src, dst, label in ((a, b, "forward"), (b, a, "backward")):
        gb = GroebnerBasis(ring, n, dst.columns(), order, f)
        for j, col in enumerate(src.columns()):
            if not gb.contains(col):
                raise IsoCheckFailed(col, f"{label} relation {j} is not a relation of the other side")
    return PolyMatrix.identity(ring, n), PolyMatrix.identity(ring, n)


def roundtrip_check(p: LinearFactorization, order=GREVLEX) -> RoundtripReport:
    """coker(d1) over R -> eisenbud -> compare cokernels."""
    f = p.f
    pres = coker_presentation(p, "d1")
    module = ModulePresentation(pres, "R", f)
    result = eisenbud_factorization(module, order)
    report = RoundtripReport(p, module, result)
    zero = GroebnerBasis(p.ring, p.rank, pres.columns(), order, f) if p.rank else None
    if p.rank == 0 or all(zero.contains(e) for e in PolyMatrix.identity(p.ring, p.rank).columns()):
        report.contractible = True
        report.notes.append("coker(d1) is zero; the input is contractible")
    new = coker_presentation(result, "d1")
    if new.nrows != pres.nrows:
        raise IsoCheckFailed(None, "generator counts differ")
    report.forward, report.backward = _iso_maps(pres, new, f, order)
    return report
