# %% [markdown]
# # Dehn twists on homology
#
# A Dehn twist acts on middle homology by x -> x + eps <x, S> S. In even
# dimension <S, S> = +-2 and the twist reverses S, so its square is the
# identity. The squared twist of L is invisible on homology.

# %%
import random

from floerlab import picard

lat = picard.a2_lattice()
T = picard.twist_matrix(lat, "S")
print("pairing:", lat.pairing)
print("tau_S  :", T)
print("tau_S^2:", picard.matrix_power(T, 2))
print("tau_S(L) =", picard.dehn_twist_action(lat, "S", "L"), " tau_S^2(L) =", picard.twist_power(lat, "S", "L", 2))

# %% [markdown]
# In odd dimension the pairing is antisymmetric, <S, S> = 0, and the
# iterates of L march off along S.

# %%
odd = picard.IntersectionLattice([[0, 1], [-1, 0]], ["L", "S"], "odd")
print([picard.twist_power(odd, "S", "L", k) for k in range(6)])

# %% [markdown]
# The same dichotomy on random lattices, in scrambled bases.

# %%
rng = random.Random(0)
inv = 0
for _ in range(100):
    L, S = picard.random_even_lattice(rng, rng.randint(2, 6))
    M = picard.twist_matrix(L, S)
    inv += picard.matmul(M, M) == picard.identity(L.rank)
print(f"tau^2 = id on {inv}/100 random even lattices")
