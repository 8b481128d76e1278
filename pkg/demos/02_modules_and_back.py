# %% [markdown]
# # From a module over S/(f) to a factorization and back
#
# A module over R = S/(f) whose relation module over S is free
# gives a square presentation matrix; its cofactor completes a factorization.

# %%
import random

from mfkit import PolyMatrix, PolyRing
from mfkit.correspondence import ModulePresentation, eisenbud_factorization, roundtrip_check
from mfkit.errors import PdTooLarge
from mfkit.instances import random_graded_module
from mfkit.ring import GF

S = PolyRing("x")
(x,) = S.gens
k = ModulePresentation(PolyMatrix(S, [[x]]), "R", x * x)
p = eisenbud_factorization(k)
print("k over Q[x]/(x^2) ->", p.d1, p.d0)

# %% [markdown]
# A disguised presentation with redundant relations still lands on a factorization
# of the same rank.

# %%
T = PolyRing("x, y, z", GF(101))
m = random_graded_module(T, random.Random(7), 2)
print("relations:", m.relations.shape)
q = eisenbud_factorization(m)
print("rank", q.rank, "f =", q.f)

# %% [markdown]
# The residue field over xy has a non-free relation module over S.

# %%
S2 = PolyRing("x, y")
a, b = S2.gens
try:
    eisenbud_factorization(ModulePresentation(PolyMatrix(S2, [[a, b]]), "R", a * b))
except PdTooLarge as e:
    print("refused:", e)

# %% [markdown]
# Round trip: coker(d1) then back.

# %%
r = roundtrip_check(q)
print("round trip ok, contractible part:", r.contractible)
