"""Gröbner bases for submodules of free modules over S and over R = S/(f).

Module elements are sequences of polynomials.  Internally a vector is a
sparse dict ``{(component, exponent): coefficient}``.  Monomial orders act
position-over-term: component 0 has the highest priority.

Working over R is done by adjoining ``f * e_i`` for every component to the
generator list, so the same engine serves both rings.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from itertools import product
from typing import Sequence

from .errors import DimensionMismatch, NoSolution, NotGraded, RankMismatch, StepBudgetExceeded
from .matrix import PolyMatrix, infer_degrees
from .ring import Poly, divides, grevlex_key, lex_key, reduce_mod

DEFAULT_MAX_STEPS = 200_000
_budget = contextvars.ContextVar("max_steps", default=DEFAULT_MAX_STEPS)


@contextlib.contextmanager
def step_budget(n):
    """Cap S-pair reductions for every basis computed inside the block."""
    token = _budget.set(n)
    try:
        yield
    finally:
        _budget.reset(token)


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex or lex on variables, extended position-over-term to modules."""

    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")

    def mono_key(self):
        return grevlex_key if self.kind == "grevlex" else lex_key

    def term_key(self):
        mk = self.mono_key()
        memo = {}

        def key(t):
            k = memo.get(t)
            if k is None:
                k = memo[t] = (-t[0], mk(t[1]))
            return k

        return key


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def _to_vec(elem, rank):
    if len(elem) != rank:
        raise RankMismatch(f"element of length {len(elem)} in a rank-{rank} module")
    vec = {}
    for i, p in enumerate(elem):
        for e, c in p.terms.items():
            vec[i, e] = c
    return vec


def _from_vec(ring, vec, rank):
    parts = [{} for _ in range(rank)]
    for (i, e), c in vec.items():
        parts[i][e] = c
    return tuple(Poly(ring, t) for t in parts)


def _axpy(target, c, shift, src, F):
    """target += c * x^shift * src, in place."""
    add, mul = F.add, F.mul
    zero = F.zero
    for (i, e), v in src.items():
        k = (i, tuple(a + b for a, b in zip(e, shift)))
        nv = add(target.get(k, zero), mul(c, v))
        if nv:
            target[k] = nv
        else:
            target.pop(k, None)


def _scaled(vec, c, F):
    return {k: F.mul(v, c) for k, v in vec.items()}


class _Elem:
    __slots__ = ("vec", "rep", "comp", "exp")

    def __init__(self, vec, rep, key):
        self.vec = vec
        self.rep = rep
        self.comp, self.exp = max(vec, key=key)


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub_exp(a, b):
    return tuple(x - y for x, y in zip(a, b))


class _Reducer:
    """Division of vectors by a list of monic elements."""

    def __init__(self, F, key):
        self.F = F
        self.key = key
        self.elems = []
        self.by_comp = {}

    def add(self, elem):
        self.by_comp.setdefault(elem.comp, []).append(len(self.elems))
        self.elems.append(elem)

    def reduce(self, vec, skip=None):
        """Return (remainder, quotients) with vec = remainder + sum q_k * elem_k.

        quotients is a sparse vector whose component is the element index.
        """
        F, key = self.F, self.key
        p = dict(vec)
        r = {}
        quot = {}
        while p:
            t = max(p, key=key)
            c = p[t]
            comp, e = t
            for k in self.by_comp.get(comp, ()):
                if k == skip:
                    continue
                g = self.elems[k]
                if divides(g.exp, e):
                    shift = _sub_exp(e, g.exp)
                    _axpy(p, F.neg(c), shift, g.vec, F)
                    qk = (k, shift)
                    nv = F.add(quot.get(qk, F.zero), c)
                    if nv:
                        quot[qk] = nv
                    else:
                        quot.pop(qk, None)
                    break
            else:
                r[t] = c
                del p[t]
        return r, quot

    def rep_of(self, quot):
        """sum q_k * rep_k for a quotient vector over element indices."""
        out = {}
        for (k, shift), c in quot.items():
            _axpy(out, c, shift, self.elems[k].rep, self.F)
        return out


def _single_component(vec):
    comps = {i for i, _ in vec}
    return len(comps) == 1


def _buchberger(inputs, nvars, F, order, max_steps):
    if max_steps is None:
        max_steps = _budget.get()
    key = order.term_key()
    red = _Reducer(F, key)
    pairs = set()

    def insert(vec, rep):
        e = _Elem(vec, rep, key)
        inv = F.inv(vec[(e.comp, e.exp)])
        if inv != F.one:
            e.vec = _scaled(vec, inv, F)
            e.rep = _scaled(rep, inv, F)
        idx = len(red.elems)
        for j in red.by_comp.get(e.comp, ()):
            pairs.add((j, idx))
        red.add(e)

    for i, vec in enumerate(inputs):
        if not vec:
            continue
        r, quot = red.reduce(vec)
        if r:
            rep = {(i, (0,) * nvars): F.one}
            for (k, shift), c in quot.items():
                _axpy(rep, F.neg(c), shift, red.elems[k].rep, F)
            insert(r, rep)

    steps = 0
    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(_lcm(red.elems[ij[0]].exp, red.elems[ij[1]].exp)),
                                          ij[1], ij[0]))
        pairs.discard((i, j))
        gi, gj = red.elems[i], red.elems[j]
        lcm = _lcm(gi.exp, gj.exp)
        # product criterion, valid only for single-component elements
        if (all(a == 0 or b == 0 for a, b in zip(gi.exp, gj.exp))
                and _single_component(gi.vec) and _single_component(gj.vec)):
            continue
        # chain criterion
        chained = False
        for k in red.by_comp[gi.comp]:
            if k in (i, j):
                continue
            if divides(red.elems[k].exp, lcm) \
                    and (min(i, k), max(i, k)) not in pairs \
                    and (min(j, k), max(j, k)) not in pairs:
                chained = True
                break
        if chained:
            continue
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(f"more than {max_steps} S-pair reductions")
        s = {}
        _axpy(s, F.one, _sub_exp(lcm, gi.exp), gi.vec, F)
        _axpy(s, F.neg(F.one), _sub_exp(lcm, gj.exp), gj.vec, F)
        if not s:
            continue
        r, quot = red.reduce(s)
        if r:
            rep = {}
            _axpy(rep, F.one, _sub_exp(lcm, gi.exp), gi.rep, F)
            _axpy(rep, F.neg(F.one), _sub_exp(lcm, gj.exp), gj.rep, F)
            for (k, shift), c in quot.items():
                _axpy(rep, F.neg(c), shift, red.elems[k].rep, F)
            insert(r, rep)
    return _interreduce(red.elems, F, key)


def _interreduce(elems, F, key):
    keep = []
    for i, g in enumerate(elems):
        redundant = False
        for j, h in enumerate(elems):
            if i == j or h.comp != g.comp or not divides(h.exp, g.exp):
                continue
            if h.exp != g.exp or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(g)
    red = _Reducer(F, key)
    for g in keep:
        red.add(g)
    for idx, g in enumerate(red.elems):
        r, quot = red.reduce(g.vec, skip=idx)
        if quot:
            rep = dict(g.rep)
            for (k, shift), c in quot.items():
                _axpy(rep, F.neg(c), shift, red.elems[k].rep, F)
            g.vec, g.rep = r, rep
    return red


class GroebnerBasis:
    """Buchberger-complete basis of the submodule spanned by ``gens``.

    With ``quotient`` set to f, the basis is of gens + {f e_i} and every
    question is answered over R = S/(f).
    """

    def __init__(self, ring, rank, gens, order=GREVLEX, quotient=None, max_steps=None):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.quotient = quotient
        self.gens = tuple(tuple(g) for g in gens)
        inputs = [_to_vec(g, rank) for g in self.gens]
        if quotient is not None:
            if quotient.is_zero():
                raise ValueError("quotient mode needs f != 0")
            zero = ring.zero
            for i in range(rank):
                inputs.append(_to_vec(tuple(quotient if k == i else zero for k in range(rank)), rank))
        self._inputs = inputs
        self._F = ring.field
        self._key = order.term_key()
        self._red = _buchberger(inputs, ring.nvars, self._F, order, max_steps)

    @property
    def generators(self):
        return [_from_vec(self.ring, g.vec, self.rank) for g in self._red.elems]

    @property
    def transformation(self):
        """Row k expresses basis element k in the (augmented) input generators."""
        n = len(self._inputs)
        return [_from_vec(self.ring, g.rep, n) for g in self._red.elems]

    def leading_terms(self):
        return [(g.comp, g.exp) for g in self._red.elems]

    def __len__(self):
        return len(self._red.elems)

    def _reduce(self, v):
        return self._red.reduce(_to_vec(tuple(v), self.rank))

    def normal_form(self, v):
        r, _ = self._reduce(v)
        return _from_vec(self.ring, r, self.rank)

    def contains(self, v) -> bool:
        r, _ = self._reduce(v)
        return not r

    def lift(self, v):
        """Coefficients c with sum c_i gens_i == v (mod f in quotient mode), or None."""
        r, quot = self._reduce(v)
        if r:
            return None
        rep = self._red.rep_of(quot)
        coeffs = _from_vec(self.ring, rep, len(self._inputs))[:len(self.gens)]
        if self.quotient is not None:
            coeffs = tuple(reduce_mod(c, self.quotient) if c.terms else c for c in coeffs)
        return list(coeffs)

    def syzygies(self):
        """Generators of the relations among ``gens`` (mod f in quotient mode)."""
        F, red = self._F, self._red
        n_in = len(self._inputs)
        out = []
        for comp, idxs in red.by_comp.items():
            for a in range(len(idxs)):
                for b in range(a + 1, len(idxs)):
                    i, j = idxs[a], idxs[b]
                    gi, gj = red.elems[i], red.elems[j]
                    lcm = _lcm(gi.exp, gj.exp)
                    s = {}
                    _axpy(s, F.one, _sub_exp(lcm, gi.exp), gi.vec, F)
                    _axpy(s, F.neg(F.one), _sub_exp(lcm, gj.exp), gj.vec, F)
                    syz = {}
                    _axpy(syz, F.one, _sub_exp(lcm, gi.exp), gi.rep, F)
                    _axpy(syz, F.neg(F.one), _sub_exp(lcm, gj.exp), gj.rep, F)
                    r, quot = red.reduce(s)
                    assert not r, "basis is not Gröbner"
                    for (k, shift), c in quot.items():
                        _axpy(syz, F.neg(c), shift, red.elems[k].rep, F)
                    if syz:
                        out.append(syz)
        nv = self.ring.nvars
        for i, v in enumerate(self._inputs):
            syz = {(i, (0,) * nv): F.one}
            r, quot = red.reduce(v)
            assert not r
            for (k, shift), c in quot.items():
                _axpy(syz, F.neg(c), shift, red.elems[k].rep, F)
            if syz:
                out.append(syz)
        m = len(self.gens)
        result = []
        seen = set()
        for syz in out:
            elem = _from_vec(self.ring, syz, n_in)[:m]
            if self.quotient is not None:
                elem = tuple(reduce_mod(c, self.quotient) if c.terms else c for c in elem)
            if all(not c.terms for c in elem) or elem in seen:
                continue
            seen.add(elem)
            result.append(elem)
        return result

    def standard_monomial_count(self):
        """k-dimension of the quotient module S^rank / span, None if infinite."""
        nv = self.ring.nvars
        leads = {}
        for g in self._red.elems:
            leads.setdefault(g.comp, []).append(g.exp)
        total = 0
        for c in range(self.rank):
            ls = leads.get(c, [])
            if any(sum(e) == 0 for e in ls):
                continue
            bounds = []
            for v in range(nv):
                pure = [e[v] for e in ls if all(x == 0 for k, x in enumerate(e) if k != v)]
                if not pure:
                    return None
                bounds.append(min(pure))
            for e in product(*(range(b) for b in bounds)):
                if not any(divides(l, e) for l in ls):
                    total += 1
        return total


def groebner_basis(gens: Sequence[Sequence[Poly]], order=GREVLEX, quotient_mode: Poly | None = None,
                   rank=None, ring=None, max_steps=None) -> GroebnerBasis:
    """Gröbner basis of span(gens); ``rank`` and ``ring`` are needed only when gens is empty."""
    gens = [tuple(g) for g in gens]
    if rank is None:
        if not gens:
            raise ValueError("rank must be given for an empty generator list")
        rank = len(gens[0])
    if ring is None:
        if quotient_mode is not None:
            ring = quotient_mode.ring
        elif gens and rank:
            ring = gens[0][0].ring
        else:
            raise ValueError("ring must be given")
    return GroebnerBasis(ring, rank, gens, order, quotient_mode, max_steps)


def normal_form(v, gb: GroebnerBasis):
    if len(v) != gb.rank:
        raise RankMismatch(f"length {len(v)} vs rank {gb.rank}")
    return gb.normal_form(v)


def lift_through(target, gens, quotient_mode=None, order=GREVLEX, ring=None,
                 max_steps=None):
    """Coefficients c with sum c_i gens_i == target, or None if not in the module."""
    target = tuple(target)
    if ring is None:
        ring = target[0].ring if target else quotient_mode.ring
    gb = groebner_basis(gens, order, quotient_mode, rank=len(target), ring=ring, max_steps=max_steps)
    return gb.lift(target)


def syzygy_module(gens, quotient_mode=None, order=GREVLEX, rank=None, ring=None,
                  max_steps=None):
    """Generators of all relations sum c_i gens_i = 0 (mod f in quotient mode)."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return []
    gb = groebner_basis(gens, order, quotient_mode, rank, ring, max_steps)
    return gb.syzygies()


# --- matrix-level helpers -------------------------------------------------

def column_basis(m: PolyMatrix, quotient=None, order=GREVLEX, max_steps=None):
    """Gröbner basis of the column span of m (over R when quotient is given)."""
    return GroebnerBasis(m.ring, m.nrows, m.columns(), order, quotient, max_steps)


def matrix_syzygies(m: PolyMatrix, quotient=None, order=GREVLEX, max_steps=None):
    """Matrix whose columns generate ker(m) (over R when quotient is given)."""
    n = m.ncols
    if n == 0:
        return PolyMatrix.zeros(m.ring, 0, 0)
    if m.nrows == 0:
        return PolyMatrix.identity(m.ring, n)
    syz = column_basis(m, quotient, order, max_steps).syzygies()
    return PolyMatrix.from_columns(m.ring, syz, n)


def solve_columns(gens: PolyMatrix, targets: PolyMatrix, quotient=None, order=GREVLEX,
                  gb: GroebnerBasis | None = None):
    """X with gens @ X == targets (mod f in quotient mode), or None."""
    if gens.nrows != targets.nrows:
        raise DimensionMismatch(f"{gens.shape} vs {targets.shape}")
    if gb is None:
        gb = column_basis(gens, quotient, order)
    cols = []
    for t in targets.columns():
        c = gb.lift(t)
        if c is None:
            return None
        cols.append(c)
    return PolyMatrix.from_columns(gens.ring, cols, gens.ncols)


def minimal_columns(m: PolyMatrix, quotient=None, order=GREVLEX, row_degrees=None):
    """Minimal generating subset of the column span of a graded matrix.

    Columns are visited in increasing degree and kept only when they are not
    already in the span of those kept before.  Raises NotGraded.
    """
    _, cdeg = infer_degrees(m, row_degrees)
    if quotient is not None and not quotient.is_homogeneous():
        raise NotGraded(f"f = {quotient} is not homogeneous")
    order_idx = sorted(range(m.ncols), key=lambda j: cdeg[j])
    kept = []
    gb = None
    for j in order_idx:
        col = m.column(j)
        if all(not a.terms for a in col):
            continue
        if gb is not None and gb.contains(col):
            continue
        if gb is None and quotient is not None:
            if GroebnerBasis(m.ring, m.nrows, [], order, quotient).contains(col):
                continue
        kept.append(j)
        gb = GroebnerBasis(m.ring, m.nrows, [m.column(k) for k in kept], order, quotient)
    kept.sort(key=lambda j: (cdeg[j], j))
    return m.submatrix(range(m.nrows), kept)


def prune_columns(m: PolyMatrix, quotient=None, order=GREVLEX):
    """Drop zero columns and columns lying in the span of the remaining ones."""
    keep = [j for j in range(m.ncols) if any(a.terms for a in m.column(j))]
    j = len(keep) - 1
    while j >= 0 and len(keep) > 1:
        others = [m.column(k) for k in keep if k != keep[j]]
        if GroebnerBasis(m.ring, m.nrows, others, order, quotient).contains(m.column(keep[j])):
            del keep[j]
        j -= 1
    return m.submatrix(range(m.nrows), keep)


# --- linear matrix equations ----------------------------------------------

def solve_matrix_equation(shapes, equations, rhs, quotient_mode=None, order=GREVLEX,
                          max_steps=None):
    """Solve sum_t A_t X_{u_t} B_t = rhs_e for every equation e.

    ``shapes`` lists (rows, cols) of the unknowns; ``equations[e]`` is a list of
    ``(A, u, B)`` triples where A or B may be None for an identity factor.
    Returns one solution as a list of matrices; raises NoSolution.
    """
    rhs = list(rhs)
    ring = rhs[0].ring
    zero = ring.zero
    offsets = []
    total = 0
    for r in rhs:
        offsets.append(total)
        total += r.nrows * r.ncols
    columns = []
    index = []
    for u, (ur, uc) in enumerate(shapes):
        for p in range(ur):
            for q in range(uc):
                col = [zero] * total
                for e, terms in enumerate(equations):
                    R, C = rhs[e].shape
                    base = offsets[e]
                    for A, tu, B in terms:
                        if tu != u:
                            continue
                        for i in range(R):
                            a = (ring.one if i == p else zero) if A is None else A[i, p]
                            if not a.terms:
                                continue
                            for j in range(C):
                                b = (ring.one if j == q else zero) if B is None else B[q, j]
                                if b.terms:
                                    col[base + i * C + j] = col[base + i * C + j] + a * b
                columns.append(tuple(col))
                index.append((u, p, q))
    target = tuple(e for r in rhs for row in r.rows for e in row)
    if total == 0:
        return [PolyMatrix.zeros(ring, r, c) for r, c in shapes]
    if not columns:
        if all(not t.terms for t in target) or (
                quotient_mode is not None and all(not reduce_mod(t, quotient_mode).terms for t in target)):
            return []
        raise NoSolution("no unknowns and nonzero right-hand side")
    gb = GroebnerBasis(ring, total, columns, order, quotient_mode, max_steps)
    coeffs = gb.lift(target)
    if coeffs is None:
        raise NoSolution("right-hand side is not in the image")
    sols = [[[zero] * c for _ in range(r)] for r, c in shapes]
    for (u, p, q), c in zip(index, coeffs):
        sols[u][p][q] = c
    return [PolyMatrix(ring, s, shape) for s, shape in zip(sols, shapes)]
