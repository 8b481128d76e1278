# %% [markdown]
# # Ext groups and the change-of-rings comparison
#
# Ext is computed from a free resolution and reported as a vector-space
# dimension when it has finite length.

# %%
from mfkit.correspondence import ModulePresentation
from mfkit.homological import ext_dimension, free_resolution, rees_check_i, rees_check_ii
from mfkit.ring import GF, PolyRing

S = PolyRing("x, y", GF(101))
x, y = S.gens
k = ModulePresentation.residue_field(S)
res = free_resolution(k)
print("Koszul ranks:", [res.rank(i) for i in range(res.length + 1)])
print("Ext^i(k, S):", [ext_dimension(i, k, ModulePresentation.free(S, 1)).dimension for i in range(3)])

# %% [markdown]
# Over R = S/(xy) the resolution of k never stops; we truncate.

# %%
kR = ModulePresentation.residue_field(S, "R", x * y)
print([d.shape for d in free_resolution(kR, 4).differentials])

# %% [markdown]
# Compare Ext over S in one degree higher with Ext over R.

# %%
for i in range(3):
    v = rees_check_i(i, k, ModulePresentation.free(S, 1), x * y)
    w = rees_check_ii(i, ModulePresentation.free(S, 1), k, x * y)
    print(i, (v.lhs.dimension, v.rhs.dimension), (w.lhs.dimension, w.rhs.dimension))
