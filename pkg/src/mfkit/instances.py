"""Standard example objects and random instance generators."""

from __future__ import annotations

import random

from .correspondence import ModulePresentation, eisenbud_factorization
from .factorization import (Homotopy, MfMorphism, direct_sum,
                            morphism_generators, nullhomotopic_morphism, shift,
                            trivial_factorizations, validate_factorization)
from .matrix import PolyMatrix, adjugate, det
from .ring import QQ, GF, PolyRing, random_poly


def basic_factorizations(field=QQ):
    """The named starting objects, each over its own ring."""
    r1 = PolyRing("x", field)
    (x,) = r1.gens
    r2 = PolyRing("x, y", field)
    X, Y = r2.gens
    m = lambda ring, rows: PolyMatrix(ring, rows)  # noqa: E731
    out = {
        "x|x": validate_factorization(x * x, m(r1, [[x]]), m(r1, [[x]])),
        "x|y": validate_factorization(X * Y, m(r2, [[X]]), m(r2, [[Y]])),
        "sum-of-squares": validate_factorization(
            X * X + Y * Y, m(r2, [[X, Y], [-Y, X]]), m(r2, [[X, -Y], [Y, X]])),
    }
    return out


def example_library(field=QQ):
    """Named factorizations: the basic ones, trivial ones for each f, pairwise sums and shifts."""
    base = basic_factorizations(field)
    groups = {}
    for name, p in base.items():
        one_f, f_one = trivial_factorizations(p.f)
        fname = str(p.f)
        groups[fname] = [(name, p), (f"(1,{fname})", one_f), (f"({fname},1)", f_one)]
    lib = {}
    for items in groups.values():
        for name, p in items:
            lib[name] = p
        for name, p in items:
            lib[f"shift {name}"] = shift(p)
        for i, (a, p) in enumerate(items):
            for b, q in items[i:]:
                lib[f"{a} + {b}"] = direct_sum(p, q)
    return lib


def random_matrix(ring, rng, nrows, ncols, max_degree=1, nterms=2, homogeneous=None):
    return PolyMatrix(ring, [[random_poly(ring, rng, max_degree, nterms, homogeneous)
                              for _ in range(ncols)] for _ in range(nrows)], (nrows, ncols))


def random_linear_factorization(ring, rng, rank):
    """(A, adj A) with A of random linear forms; f = det A is homogeneous."""
    while True:
        a = random_matrix(ring, rng, rank, rank, 1, 3, homogeneous=1)
        f = det(a)
        if not f.is_zero():
            return validate_factorization(f, a, adjugate(a))


def _invertible_constant(ring, rng, n):
    F = ring.field
    while True:
        m = PolyMatrix(ring, [[ring.const(F.random_element(rng)) for _ in range(n)] for _ in range(n)],
                       (n, n))
        if not det(m).is_zero():
            return m


def random_graded_module(ring, rng, rank, extra=2):
    """An R-module with a free S-relation module, disguised.

    Starts from coker(A) for a random linear A, mixes the generators and the
    relations by constant invertible changes of basis, then appends redundant
    relations (A times random linear combinations) and returns it over
    R = S/(det A).  The presentation is homogeneous once the generators get
    degree 0.
    """
    a = random_linear_factorization(ring, rng, rank).d1
    f = det(a)
    p = _invertible_constant(ring, rng, rank)
    q = _invertible_constant(ring, rng, rank)
    rel = p @ a @ q
    if extra:
        combo = random_matrix(ring, rng, rank, extra, 1, 2, homogeneous=1)
        rel = rel.hstack(p @ a @ combo)
    return ModulePresentation(rel, "R", f)


def random_eisenbud_factorization(ring, rng, max_rank=3):
    rank = rng.randint(1, max_rank)
    return eisenbud_factorization(random_graded_module(ring, rng, rank))


def random_homotopy(p, q, rng, max_degree=2, nterms=2):
    ring = p.ring
    h0 = random_matrix(ring, rng, q.rank, p.rank, max_degree, nterms)
    h1 = random_matrix(ring, rng, q.rank, p.rank, max_degree, nterms)
    return Homotopy(h0, h1)


def random_nullhomotopic(p, q, rng, max_degree=2, nterms=2):
    h = random_homotopy(p, q, rng, max_degree, nterms)
    return nullhomotopic_morphism(p, q, h), h


def random_morphism(p, q, rng, gens=None, max_degree=1, nterms=2):
    """Random S-combination of generators of the strict morphisms p -> q."""
    gens = morphism_generators(p, q) if gens is None else gens
    ring = p.ring
    a0 = PolyMatrix.zeros(ring, q.rank, p.rank)
    a1 = PolyMatrix.zeros(ring, q.rank, p.rank)
    for g in gens:
        c = ring.const(ring.field.random_element(rng)) + random_poly(ring, rng, max_degree, nterms)
        a0 = a0 + g.alpha0 * c
        a1 = a1 + g.alpha1 * c
    return MfMorphism(p, q, a0, a1)


def small_random_pairs(rng, field=None, count=10):
    """(p, q) pairs over one ring: library objects of a common f and random linear ones."""
    field = field or GF(101)
    lib = list(example_library(field).values())
    ring = PolyRing("x, y", field)
    pairs = []
    by_f = {}
    for p in lib:
        if p.ring.nvars == 2 and p.rank <= 2:
            by_f.setdefault(p.f, []).append(p)
    groups = list(by_f.values())
    while len(pairs) < count:
        if rng.random() < 0.5:
            g = rng.choice(groups)
            pairs.append((rng.choice(g), rng.choice(g)))
        else:
            p = random_linear_factorization(ring, rng, rng.randint(1, 2))
            pairs.append((p, p if rng.random() < 0.5 else shift(p)))
    return pairs


def seeded(seed):
    return random.Random(seed)


__all__ = ["basic_factorizations", "example_library", "random_matrix",
           "random_linear_factorization", "random_graded_module", "random_eisenbud_factorization",
           "random_homotopy", "random_nullhomotopic", "random_morphism", "small_random_pairs", "seeded"]
