# %% [markdown]
# # Ribbon trees, strata and boundary facets
#
# Stable planted ribbon trees with k plain leaves index the faces of the
# associahedron. Counting them by number of internal edges reproduces the
# face vector of the (k-1)-dimensional polytope.

# %%
from collections import Counter

from floerlab import trees

for k in range(2, 7):
    ts = trees.enumerate_stable(k)
    by = Counter(T.codim() for T in ts)
    print(f"k={k}: {len(ts):4d} trees, by codimension {dict(sorted(by.items()))}")

# %% [markdown]
# Contracting an internal edge moves to a larger stratum. Every tree
# contracts all the way down to the corolla.

# %%
T = max(trees.enumerate_stable(5), key=lambda T: T.codim())
print("start :", T.canonical, "codim", T.codim())
while T.internal_edges():
    path, _ = T.internal_edges()[0]
    T = trees.contract_edge(T, path)
    print("   ->  ", T.canonical, "codim", T.codim())

# %% [markdown]
# With round (interior) leaves the stability rule changes: round vertices
# need three round neighbours, and a round edge costs two in codimension.

# %%
for k, q in [(1, 1), (2, 1), (1, 2), (2, 2)]:
    ts = trees.enumerate_plain_round(k, q)
    by = Counter(T.codim() for T in ts)
    print(f"(k, q) = ({k}, {q}): {len(ts):4d} trees, by codimension {dict(sorted(by.items()))}")

# %% [markdown]
# The codimension-one plain breakings that enter the deformed structure
# equation. A class (a, b, c) sends c consecutive plain inputs after the
# first b, together with a of the q round inputs, into the inner disk.
# There are q choose a ways to pick those round inputs.

# %%
for (a, b, c), m in sorted(trees.facet_multiplicities(3, 2).items()):
    print(f"a={a} b={b} c={c}: multiplicity {m}")
