# %% [markdown]
# # A Fock state as a sum of coherent states
#
# Any Fock state is a finite signed sum of SU(M) coherent states. A circuit
# only rotates the coherent-state parameters, so the evolved state stays
# exact with the same number of terms. Here we check it against brute-force
# evolution in the full Fock space and look at one reduced density matrix.

# %%
import numpy as np

from gcsboson import (enumerate_basis, evolve, evolve_fock, haar_unitary,
                      kan_expand_general, kan_expand_single_occupancy, reconstruct_state)
from gcsboson import entanglement as ent

ens = kan_expand_general((2, 1, 0))
print(f"|2,1,0> needs {ens.N} coherent states; amplitudes {np.round(ens.amplitudes.real, 4)}")
basis = enumerate_basis(3, 3)
print("reconstruction:", np.round(reconstruct_state(ens, basis.states).real, 12))

# %%
S, M = 3, 6
U = haar_unitary(M, 3)
gcs = evolve(kan_expand_single_occupancy(S, M), U)
basis = enumerate_basis(S, M)
diff = np.abs(reconstruct_state(gcs, basis.states) - evolve_fock(U, (1,) * S + (0,) * (M - S), 1.0, basis))
print(f"{gcs.N} coherent states vs {basis.dim} Fock amplitudes, max deviation {diff.max():.1e}")

# %%
ctx = ent.partition_overlaps(gcs, 3)
for n in range(S + 1):
    print(f"{n} photons on the right: spectrum {np.round(ent.block_spectrum(ctx, gcs.amplitudes, S, n), 4)}")
print("S_vN =", ent.von_neumann_entropy(ctx, gcs.amplitudes, S))
