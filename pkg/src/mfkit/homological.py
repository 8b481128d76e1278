"""Free resolutions and Ext over S and over R = S/(f).

Ext^i(N, M) is computed from a free resolution F of N as the homology of
Hom(F, M), where Hom(F_i, M) = M^{r_i} is handled as vectors in S^{r_i * s}
modulo the relations of M.  Results are compared by k-dimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .correspondence import ModulePresentation, s_presentation
from .errors import NotGraded, RegularityFailed
from .factorization import LinearFactorization
from .groebner import GREVLEX, GroebnerBasis, matrix_syzygies, minimal_columns, prune_columns
from .matrix import PolyMatrix, infer_degrees
from .periodic import coker_presentation


@dataclass(frozen=True)
class FreeResolution:
    """differentials[k] maps F_{k+1} -> F_k; differentials[0] presents the module.

    ``terminated`` is True when the kernel of the last map was found to be zero.
    """

    module: ModulePresentation
    differentials: tuple
    terminated: bool
    minimal: bool

    @property
    def mode(self):
        return "S-full" if self.module.over == "S" else f"R-truncated({self.length})"

    @property
    def length(self):
        return len(self.differentials)

    def rank(self, k):
        """Rank of F_k (0 past the end of a terminated resolution)."""
        if k == 0:
            return self.module.ngens
        if k <= self.length:
            return self.differentials[k - 1].ncols
        if self.terminated:
            return 0
        raise IndexError(f"resolution computed only to length {self.length}")

    def differential(self, k):
        """The map F_k -> F_{k-1} for k >= 1."""
        ring = self.module.ring
        if k <= self.length:
            return self.differentials[k - 1]
        if self.terminated:
            return PolyMatrix.zeros(ring, self.rank(k - 1), 0)
        raise IndexError(f"resolution computed only to length {self.length}")


@dataclass
class ExtResult:
    index: int
    dimension: int | None  # None when the homology does not have finite length
    presentation: PolyMatrix
    over: str = "S"

    @property
    def finite_length(self):
        return self.dimension is not None


@dataclass
class ReesVerdict:
    index: int
    lhs: ExtResult
    rhs: ExtResult
    regularity: list = field(default_factory=list)

    @property
    def comparable(self):
        return self.lhs.finite_length and self.rhs.finite_length

    @property
    def equal(self):
        return self.lhs.dimension == self.rhs.dimension if self.comparable else None


@dataclass
class VanishingVerdict:
    holds: bool
    dimensions: dict
    sanity: dict
    first_failure: int | None = None


def free_resolution(m: ModulePresentation, max_length=None, minimal=True, order=GREVLEX):
    """Iterated syzygies of the relation matrix.

    Over S the default length is nvars + 1.  Over R a length is required and
    the result is a truncation.  ``minimal`` prunes each step to a minimal
    generating set by degree and needs homogeneous input (else NotGraded).
    """
    q = m.quotient
    ring = m.ring
    if max_length is None:
        if m.over == "R":
            raise ValueError("a resolution over R needs an explicit max_length")
        max_length = ring.nvars + 1
    rel = m.relations
    row_degs = None
    if minimal:
        if q is not None and not q.is_homogeneous():
            raise NotGraded(f"f = {q} is not homogeneous")
        row_degs, _ = infer_degrees(rel)

    def shrink(mat, rows):
        if minimal:
            out = minimal_columns(mat, q, order, rows)
            return out, infer_degrees(out, rows)[1]
        return prune_columns(mat, q, order), None

    if rel.ncols:
        rel, cdegs = shrink(rel, row_degs)
    else:
        cdegs = []
    diffs = []
    terminated = False
    cur = rel
    while True:
        if cur.ncols == 0:
            terminated = True
            break
        diffs.append(cur)
        if len(diffs) >= max_length:
            break
        syz = matrix_syzygies(cur, q, order)
        if syz.ncols == 0:
            terminated = True
            break
        cur, cdegs = shrink(syz, cdegs)
    return FreeResolution(m, tuple(diffs), terminated, minimal)


def _resolve(m, length, order):
    try:
        return free_resolution(m, length, True, order)
    except NotGraded:
        return free_resolution(m, length, False, order)


def _hom_map(d: PolyMatrix, s: int) -> PolyMatrix:
    """Hom(F_k, M) -> Hom(F_{k+1}, M) for d: F_{k+1} -> F_k; that is d^T (x) I_s."""
    ring = d.ring
    rk, rk1 = d.shape
    rows = [[ring.zero] * (rk * s) for _ in range(rk1 * s)]
    for j in range(rk):
        for k in range(rk1):
            a = d[j, k]
            if a.terms:
                for t in range(s):
                    rows[k * s + t][j * s + t] = a
    return PolyMatrix(ring, rows, (rk1 * s, rk * s))


def _block_rel(b: PolyMatrix, copies: int) -> PolyMatrix:
    ring = b.ring
    if copies == 0 or b.ncols == 0:
        return PolyMatrix.zeros(ring, copies * b.nrows, 0)
    return PolyMatrix.block_diag(*([b] * copies))


def _hstack(ring, nrows, *ms):
    ms = [x for x in ms if x.ncols]
    if not ms:
        return PolyMatrix.zeros(ring, nrows, 0)
    return ms[0].hstack(*ms[1:]) if len(ms) > 1 else ms[0]


def _kernel_mod(delta: PolyMatrix, rel: PolyMatrix, q, order):
    """Generators of {v : delta v in span(rel)} (projected syzygies)."""
    ring = delta.ring
    n = delta.ncols
    if n == 0:
        return PolyMatrix.zeros(ring, 0, 0)
    if delta.nrows == 0:
        return PolyMatrix.identity(ring, n)
    big = _hstack(ring, delta.nrows, delta, rel)
    syz = matrix_syzygies(big, q, order)
    cols = [c[:n] for c in syz.columns() if any(a.terms for a in c[:n])]
    return PolyMatrix.from_columns(ring, cols, n)


def ext_dimension(i: int, n: ModulePresentation, m: ModulePresentation, order=GREVLEX,
                  resolution: FreeResolution | None = None) -> ExtResult:
    """Ext^i(N, M) over S (both over S) or over R (both over R)."""
    if n.over != m.over:
        raise ValueError("both modules must live over the same ring")
    q = n.quotient
    ring = n.ring
    s = m.ngens
    res = resolution or _resolve(n, None if n.over == "S" else i + 2, order)
    r_i = res.rank(i)
    r_next = res.rank(i + 1)
    B = m.relations
    delta = _hom_map(res.differential(i + 1), s) if r_next and r_i else \
        PolyMatrix.zeros(ring, r_next * s, r_i * s)
    cycles = _kernel_mod(delta, _block_rel(B, r_next), q, order)
    if i > 0:
        r_prev = res.rank(i - 1)
        prev = _hom_map(res.differential(i), s) if r_prev and r_i else \
            PolyMatrix.zeros(ring, r_i * s, r_prev * s)
    else:
        prev = PolyMatrix.zeros(ring, r_i * s, 0)
    k = cycles.ncols
    if k == 0:
        return ExtResult(i, 0, PolyMatrix.zeros(ring, 0, 0), n.over)
    big = _hstack(ring, r_i * s, cycles, prev, _block_rel(B, r_i))
    syz = matrix_syzygies(big, q, order)
    rels = [c[:k] for c in syz.columns() if any(a.terms for a in c[:k])]
    pres = PolyMatrix.from_columns(ring, rels, k)
    gb = GroebnerBasis(ring, k, pres.columns(), order, q)
    return ExtResult(i, gb.standard_monomial_count(), pres, n.over)


def regularity_certificate(f, m: ModulePresentation, order=GREVLEX):
    """Check f is a non-zero-divisor on coker(relations) over S.

    Every v with f v in im(B) must already be in im(B).  Returns the kernel
    generators with their expressions in B; raises RegularityFailed.
    """
    ring = m.ring
    s = m.ngens
    if s == 0:
        return []
    B = m.relations
    ker = _kernel_mod(PolyMatrix.scalar(ring, s, f), B, None, order)
    gb = GroebnerBasis(ring, s, B.columns(), order) if B.ncols else None
    cert = []
    for v in ker.columns():
        c = gb.lift(v) if gb is not None else (None if any(a.terms for a in v) else [])
        if c is None:
            raise RegularityFailed(f"{f} kills the nonzero class of {tuple(str(a) for a in v)}")
        cert.append((v, tuple(c)))
    return cert


def _as_R(m: ModulePresentation, f):
    return ModulePresentation(m.relations, "R", f)


def _as_S(m: ModulePresentation):
    return s_presentation(m) if m.over == "R" else m


def rees_check_i(i, n: ModulePresentation, m: ModulePresentation, f, order=GREVLEX) -> ReesVerdict:
    """dim Ext_S^{i+1}(N, M) against dim Ext_R^i(N, M/fM)."""
    cert = regularity_certificate(f, m, order)
    nR = _as_R(n, f) if n.over == "S" else n
    lhs = ext_dimension(i + 1, _as_S(nR), m, order)
    rhs = ext_dimension(i, nR, _as_R(m, f), order)
    return ReesVerdict(i, lhs, rhs, cert)


def rees_check_ii(i, m: ModulePresentation, n: ModulePresentation, f, order=GREVLEX) -> ReesVerdict:
    """dim Ext_S^i(M, N) against dim Ext_R^i(M/fM, N)."""
    cert = regularity_certificate(f, m, order)
    nR = _as_R(n, f) if n.over == "S" else n
    lhs = ext_dimension(i, m, _as_S(nR), order)
    rhs = ext_dimension(i, _as_R(m, f), nR, order)
    return ReesVerdict(i, lhs, rhs, cert)


def coker_ext_vanishing(p: LinearFactorization, top=3, order=GREVLEX) -> VanishingVerdict:
    """Ext_R^i(coker d1, R) == 0 for 1 <= i <= top, plus the Ext_R^i(R, coker d1) sanity side."""
    f, ring = p.f, p.ring
    coker = ModulePresentation(coker_presentation(p, "d1"), "R", f)
    free = ModulePresentation.free(ring, 1, "R", f)
    res = _resolve(coker, top + 2, order)
    dims, sanity = {}, {}
    first = None
    for i in range(1, top + 1):
        d = ext_dimension(i, coker, free, order, res).dimension
        dims[i] = d
        if d != 0 and first is None:
            first = i
        sanity[i] = ext_dimension(i, free, coker, order).dimension
        if sanity[i] != 0 and first is None:
            first = i
    return VanishingVerdict(first is None, dims, sanity, first)
