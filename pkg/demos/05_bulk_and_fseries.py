# %% [markdown]
# # Bulk deformations
#
# With an interior point constraint, a strip count enters at order hbar^1,
# where deg hbar = 2 - l. With n = l and |a| = 2n - 2 the degree count
# leaves exactly one admissible q for each entry.

# %%
from fractions import Fraction

from floerlab import ainfty, coeff, deform, pipeline

for l in (4, 6, 8):
    F = pipeline.a2_bulk_family(l)
    cut = deform.ledger_cutoff(F, 2)
    print(f"l={l}: lambda entry lives at q={cut[(('av', 'b'), 'e0')]}, "
          f"pairing entry at q={cut[(('av', 'a'), 'f0')]}")

# %% [markdown]
# Assembling with the 1/q! normalisation gives a category over the graded
# Laurent ring. a^v / hbar has degree zero, and composing it with b gives
# the unit exactly.

# %%
l = 6
B = deform.assemble_bulk(pipeline.a2_bulk_family(l))
print("structure ok:", ainfty.check_ainfty(B).passed)
prod = B.apply([{"av": coeff.GradedLaurent({-1: Fraction(1)}, l)}, {"b": coeff.GradedLaurent({0: Fraction(1)}, l)}])
print("mu2(a^v/hbar, b) =", {k: str(v) for k, v in prod.items()})
rep = pipeline.run_theorem_1_2(l)
for k, v in rep.verdicts.items():
    print(f"  {k:20s} {v}")

# %% [markdown]
# When the bulk cycle bounds, the deformed differential is conjugate to
# the undeformed one through the F-series. Words are divided by their
# partial sums, and the inverse reads each word backwards with
# alternating signs.

# %%
import random

FS = deform.random_fseries_instance(random.Random(1), rank=4, top=6)
F, G = deform.f_series(FS, 6)
print("F^-1 F = id through hbar^6:", deform.is_identity_series(deform.series_mul(G, F, 6)))
print("conjugation residual zero:", all(not any(x for x in M.flat) for M in deform.conjugation_residual(FS, 6)))
H = deform.same_order_alternating_series(FS, 6)
print("same-order alternating series inverts F:", deform.is_identity_series(deform.series_mul(H, F, 6)))
print("coefficient of hbar^2 in F:")
print(F[2])
