"""Test-only reference computations that share no code with mfkit's engine.

Polynomials are handled with sympy and linear algebra with sympy's
DomainMatrix over GF(p) or QQ.  Everything is graded and done one degree
at a time, so each question becomes a finite linear-algebra problem.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import sympy as sp
from sympy.polys.matrices import DomainMatrix


def domain(p):
    return sp.GF(p) if p else sp.QQ


def monomials(nvars, degree):
    if degree < 0:
        return []
    return [e for e in itertools.product(range(degree + 1), repeat=nvars) if sum(e) == degree]


def rank(rows, p, ncols):
    """Rank of a list-of-rows integer/rational matrix over GF(p) (p=0: QQ)."""
    if not rows or ncols == 0:
        return 0
    K = domain(p)
    dm = DomainMatrix([[K.convert(c) for c in r] for r in rows], (len(rows), ncols), K)
    return dm.rank()


def to_sympy(poly, symbols):
    """mfkit Poly -> sympy expression, read through its printed form."""
    return sp.sympify(str(poly).replace("^", "**"), locals={str(s): s for s in symbols})


def coeff_vector(expr, symbols, degree, p):
    """Coefficients of a homogeneous expression on the monomials of that degree."""
    mons = monomials(len(symbols), degree)
    if expr == 0:
        return [0] * len(mons)
    P = sp.Poly(sp.expand(expr), *symbols, domain=domain(p))
    d = dict(P.terms())
    return [d.get(m, 0) for m in mons]


# --- module membership ------------------------------------------------------

def homogeneous_membership(target, gens, symbols, p):
    """Is the homogeneous vector ``target`` in the span of homogeneous ``gens``?

    Vectors are tuples of sympy expressions, all components of a vector of one
    total degree (generators of the free module in degree 0).  The question
    is decided in the single degree of the target.
    """
    deg = _vec_degree(target, symbols)
    if deg is None:
        return True
    n = len(symbols)
    rows = []
    for g in gens:
        gd = _vec_degree(g, symbols)
        if gd is None or gd > deg:
            continue
        for mono in monomials(n, deg - gd):
            m = sp.Mul(*[s ** e for s, e in zip(symbols, mono)])
            rows.append(_flatten([m * c for c in g], symbols, deg, p))
    t = _flatten(target, symbols, deg, p)
    ncols = len(t)
    r0 = rank(rows, p, ncols)
    r1 = rank(rows + [t], p, ncols)
    return r0 == r1


def _vec_degree(vec, symbols):
    degs = {sp.Poly(c, *symbols).total_degree() for c in vec if sp.expand(c) != 0}
    if not degs:
        return None
    assert len(degs) == 1, "vector is not homogeneous"
    return degs.pop()


def _flatten(vec, symbols, degree, p):
    out = []
    for c in vec:
        out.extend(coeff_vector(c, symbols, degree, p))
    return out


# --- graded Ext by linear algebra ------------------------------------------

class GradedModule:
    """A graded module over k[symbols]/(monomial ideal) given degree by degree.

    ``kind`` is 'ring' (the ring itself, possibly modulo a monomial) or
    'residue' (the field k in degree 0).
    """

    def __init__(self, nvars, kind, killed=None):
        self.nvars = nvars
        self.kind = kind
        self.killed = killed  # exponent tuple of a monomial generating the ideal, or None

    @lru_cache(maxsize=None)
    def basis(self, d):
        if self.kind == "residue":
            return [()] if d == 0 else []
        return [e for e in monomials(self.nvars, d)
                if self.killed is None or not all(a >= b for a, b in zip(e, self.killed))]

    def act(self, mono, e):
        """Multiply basis element e (of its degree) by a monomial; None if zero."""
        if self.kind == "residue":
            return e if sum(mono) == 0 else None
        r = tuple(a + b for a, b in zip(mono, e))
        if self.killed is not None and all(a >= b for a, b in zip(r, self.killed)):
            return None
        return r


def _terms(expr, symbols, p):
    if expr == 0:
        return []
    P = sp.Poly(sp.expand(expr), *symbols, domain=domain(p))
    return list(P.terms())


def hom_cochain_matrix(D, src_degs, dst_degs, M, d, symbols, p):
    """Matrix (rows = outputs) of phi -> phi o D on degree-d maps.

    D maps a free module with generator degrees dst_degs (columns) into one
    with generator degrees src_degs (rows).  A degree-d map out of
    the row module sends generator j to M_{src_degs[j] + d}.
    """
    in_basis = [(j, e) for j, a in enumerate(src_degs) for e in M.basis(a + d)]
    out_basis = [(k, e) for k, b in enumerate(dst_degs) for e in M.basis(b + d)]
    in_index = {b: i for i, b in enumerate(in_basis)}
    out_index = {b: i for i, b in enumerate(out_basis)}
    mat = [[0] * len(in_basis) for _ in out_basis]
    for j in range(len(src_degs)):
        for k in range(len(dst_degs)):
            for mono, c in _terms(D[j][k], symbols, p):
                for e in M.basis(src_degs[j] + d):
                    r = M.act(mono, e)
                    if r is None:
                        continue
                    mat[out_index[(k, r)]][in_index[(j, e)]] += c
    return mat, len(in_basis), len(out_basis)


def free_map_matrix(D, src_degs, dst_degs, d, ring_module, symbols, p):
    """Degree-d piece of D: F_src -> F_dst over the ring of ``ring_module``."""
    in_b = [(k, e) for k, a in enumerate(src_degs) for e in ring_module.basis(d - a)]
    out_b = [(j, e) for j, a in enumerate(dst_degs) for e in ring_module.basis(d - a)]
    oi = {b: i for i, b in enumerate(out_b)}
    mat = [[0] * len(in_b) for _ in out_b]
    for col, (k, e) in enumerate(in_b):
        for j in range(len(dst_degs)):
            for mono, c in _terms(D[j][k], symbols, p):
                r = ring_module.act(mono, e)
                if r is not None:
                    mat[oi[(j, r)]][col] += c
    return mat, len(in_b), len(out_b)


def cokernel_matches(diffs, gen_degs, symbols, p, ring_module, target, top_degree):
    """dim coker(F_1 -> F_0)_d equals dim target_d for d <= top_degree."""
    for d in range(top_degree + 1):
        if diffs:
            A, a_in, a_out = free_map_matrix(diffs[0], gen_degs[1], gen_degs[0], d,
                                             ring_module, symbols, p)
            coker = a_out - rank(A, p, a_in)
        else:
            coker = sum(len(ring_module.basis(d - a)) for a in gen_degs[0])
        if coker != len(target.basis(d)):
            return False
    return True


def check_resolution(diffs, gen_degs, symbols, p, ring_module, top_degree):
    """d_k d_{k+1} == 0 and exactness in degrees <= top_degree at interior spots.

    ``diffs[k]`` maps F_{k+1} -> F_k with generator degrees gen_degs[k+1] -> gen_degs[k];
    entries are computed in the ring of ``ring_module``.
    """
    for k in range(len(diffs) - 1):
        for d in range(top_degree + 1):
            A, a_in, a_out = free_map_matrix(diffs[k], gen_degs[k + 1], gen_degs[k], d, ring_module, symbols, p)
            B, b_in, b_out = free_map_matrix(diffs[k + 1], gen_degs[k + 2], gen_degs[k + 1], d, ring_module, symbols, p)
            assert a_in == b_out
            # composite zero
            K = domain(p)
            if a_out and b_in and a_in:
                AB = (DomainMatrix([[K.convert(x) for x in r] for r in A], (a_out, a_in), K)
                      * DomainMatrix([[K.convert(x) for x in r] for r in B], (b_out, b_in), K))
                assert AB.to_Matrix().is_zero_matrix, "differentials do not compose to zero"
            # exactness: dim ker A == rank B
            ker = a_in - rank(A, p, a_in)
            assert ker == rank(B, p, b_in), f"resolution not exact at step {k + 1}, degree {d}"
    return True


def ext_dimension_oracle(i, diffs, gen_degs, M, symbols, p, window=8):
    """sum over internal degrees d of dim H^i(Hom(F, M))_d.

    Asserts the homology vanishes at both ends of the window so the finite
    sum is the whole answer.
    """
    def cochain(k, d):
        # Hom(F_k, M)_d -> Hom(F_{k+1}, M)_d
        if k >= len(diffs):
            n_in = sum(len(M.basis(a + d)) for a in gen_degs[k])
            return [], n_in, 0
        return hom_cochain_matrix(diffs[k], gen_degs[k], gen_degs[k + 1], M, d, symbols, p)

    total = 0
    per_degree = {}
    for d in range(-window, window + 1):
        A, a_in, _ = cochain(i, d)
        ker = a_in - rank(A, p, a_in)
        if i == 0:
            im = 0
        else:
            B, b_in, _ = cochain(i - 1, d)
            im = rank(B, p, b_in)
        h = ker - im
        per_degree[d] = h
        total += h
    assert per_degree[-window] == 0 and per_degree[window] == 0, "window too small"
    return total
