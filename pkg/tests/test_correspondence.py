import random

import pytest

from mfkit.correspondence import (ModulePresentation, eisenbud_factorization,
                                  faithfulness_nullhomotopy, fullness_reconstruct,
                                  lift_matrix_mod_f, roundtrip_check, s_presentation)
from mfkit.errors import NotDivisible, NotGraded, PdTooLarge
from mfkit.factorization import (Homotopy, MfMorphism, direct_sum, identity_morphism,
                                 trivial_factorizations, validate_factorization, zero_morphism)
from mfkit.groebner import GroebnerBasis
from mfkit.instances import random_graded_module, random_morphism, small_random_pairs
from mfkit.matrix import PolyMatrix, reduce_matrix_mod
from mfkit.periodic import coker_presentation
from mfkit.ring import GF, PolyRing

S1 = PolyRing("x")
(t,) = S1.gens
S2 = PolyRing("x, y")
x, y = S2.gens
M = PolyMatrix
XX = validate_factorization(t * t, M(S1, [[t]]), M(S1, [[t]]))


def test_lift_matrix_mod_f():
    assert lift_matrix_mod_f(M(S1, [[t]]), t * t) == M(S1, [[t]])
    assert lift_matrix_mod_f(M(S1, [[0]]), t * t).is_zero()
    assert lift_matrix_mod_f(M(S1, [[t ** 3 + t]]), t * t) == M(S1, [[t]])


def test_s_presentation():
    m = s_presentation(ModulePresentation(M(S1, [[t]]), "R", t * t))
    assert m.relations == M(S1, [[t, t * t]])
    free = s_presentation(ModulePresentation.free(S1, 1, "R", t * t))
    assert free.relations == M(S1, [[t * t]])
    zero = s_presentation(ModulePresentation(PolyMatrix.identity(S1, 1), "R", t * t))
    assert zero.relations == M(S1, [[1, t * t]])


def test_eisenbud_examples():
    p = eisenbud_factorization(ModulePresentation(M(S1, [[t]]), "R", t * t))
    assert (p.d1, p.d0) == (M(S1, [[t]]), M(S1, [[t]]))
    p = eisenbud_factorization(ModulePresentation(M(S2, [[x]]), "R", x * y))
    assert (p.d1, p.d0) == (M(S2, [[x]]), M(S2, [[y]]))
    p = eisenbud_factorization(ModulePresentation.free(S1, 1, "R", t * t))
    assert (p.d1, p.d0) == (M(S1, [[t * t]]), M(S1, [[1]]))


def test_eisenbud_rejections():
    with pytest.raises(PdTooLarge):
        eisenbud_factorization(ModulePresentation.residue_field(S2, "R", x * y))
    with pytest.raises(NotGraded):
        eisenbud_factorization(ModulePresentation(M(S2, [[x + y * y]]), "R", x * y))


@pytest.mark.parametrize("seed", range(6))
def test_eisenbud_random_span(seed):
    rng = random.Random(seed)
    ring = PolyRing("x, y", GF(101))
    mod = random_graded_module(ring, rng, rng.randint(1, 3))
    p = eisenbud_factorization(mod)
    a = GroebnerBasis(ring, p.rank, mod.relations.columns(), quotient=p.f)
    b = GroebnerBasis(ring, p.rank, coker_presentation(p).columns(), quotient=p.f)
    assert all(a.contains(c) for c in coker_presentation(p).columns())
    assert all(b.contains(c) for c in mod.relations.columns())


def test_faithfulness_examples():
    z = faithfulness_nullhomotopy(zero_morphism(XX, XX), (M(S1, [[0]]),) * 3)
    assert z == Homotopy(M(S1, [[0]]), M(S1, [[0]]))
    m = MfMorphism(XX, XX, M(S1, [[t]]), M(S1, [[t]]))
    h = faithfulness_nullhomotopy(m, (M(S1, [[0]]), M(S1, [[1]]), M(S1, [[0]])))
    assert h == Homotopy(M(S1, [[0]]), M(S1, [[1]]))


def test_faithfulness_rejects_fake_sigma():
    with pytest.raises(NotDivisible):
        faithfulness_nullhomotopy(identity_morphism(XX), (M(S1, [[0]]),) * 3)


def test_fullness_strict_input_unchanged():
    m = MfMorphism(XX, XX, M(S1, [[t + 3]]), M(S1, [[t + 3]]))
    r = fullness_reconstruct(XX, XX, m.alpha0, m.alpha1, m.alpha0)
    assert r.gamma == m
    assert r.sigma0.is_zero() and r.sigma1.is_zero()
    assert r.periodic_witness is not None


def test_fullness_hand_trace_gamma():
    r = fullness_reconstruct(XX, XX, M(S1, [[1 + t]]), M(S1, [[1]]), M(S1, [[1 + t]]))
    assert r.sigma0 == M(S1, [[-1]]) and r.sigma1 == M(S1, [[1]])
    assert r.gamma == identity_morphism(XX)


def test_fullness_rejects_non_chain_map():
    with pytest.raises(NotDivisible):
        fullness_reconstruct(XX, XX, M(S1, [[1]]), M(S1, [[0]]), M(S1, [[1]]))


@pytest.mark.parametrize("seed", range(5))
def test_fullness_random(seed):
    rng = random.Random(seed)
    for p, q in small_random_pairs(rng, count=2):
        m = random_morphism(p, q, rng)
        e = lambda: PolyMatrix(p.ring, [[p.ring.gens[0] + 1] * p.rank] * q.rank) * p.f  # noqa: E731
        r = fullness_reconstruct(p, q, m.alpha0 + e(), m.alpha1, m.alpha0 - e())
        assert r.periodic_witness is not None
        assert reduce_matrix_mod(r.gamma.alpha0 - m.alpha0, p.f).is_zero()


def test_roundtrip_examples():
    r = roundtrip_check(XX)
    assert r.result == XX
    one_f, f_one = trivial_factorizations(t * t)
    r = roundtrip_check(one_f)
    assert r.contractible
    r = roundtrip_check(f_one)
    assert not r.contractible and r.result == f_one
    a = validate_factorization(x * y, M(S2, [[x]]), M(S2, [[y]]))
    b = validate_factorization(x * y, M(S2, [[y]]), M(S2, [[x]]))
    r = roundtrip_check(direct_sum(a, b))
    assert r.result.rank == 2
