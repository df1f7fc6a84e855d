# %% [markdown]
# # Permanents three ways, and a fourth through coherent states
#
# A boson-sampling amplitude is the permanent of a submatrix of the circuit.
# This script compares the naive sum, Ryser's Gray-code formula and Glynn's
# formula, then recovers the same number by projecting an evolved
# coherent-state expansion onto |1...1>.

# %%
import time

import numpy as np

from gcsboson import (haar_unitary, permanent_glynn, permanent_naive, permanent_ryser,
                      permanent_via_gcs, output_probability, run_validate)

rng = np.random.default_rng(0)
A = rng.standard_normal((6, 6)) + 1j * rng.standard_normal((6, 6))
for name, fn in [("naive", permanent_naive), ("ryser", permanent_ryser),
                 ("glynn", permanent_glynn), ("gcs", permanent_via_gcs)]:
    start = time.perf_counter()
    value = fn(A)
    print(f"{name:>6}: {value:.10f}  ({time.perf_counter() - start:.4f} s)")

# %% [markdown]
# Hong-Ou-Mandel: two photons on a balanced beam splitter never leave in
# different ports.

# %%
bs = np.array([[1, 1], [1, -1]]) / np.sqrt(2)
print("P(1,1) =", output_probability(bs, (1, 1), (1, 1)))
print("P(2,0) =", output_probability(bs, (1, 1), (2, 0)))

# %% [markdown]
# Scaling of Glynn's formula with matrix size.

# %%
for n in range(8, 19, 2):
    U = haar_unitary(n, n)
    start = time.perf_counter()
    permanent_glynn(U)
    print(f"n={n:2d}  {time.perf_counter() - start:.3f} s")

# %% [markdown]
# The library's own cross-checks: every route against an independent one.

# %%
print(run_validate(seed=0).table())
