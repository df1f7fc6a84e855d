# %% [markdown]
# # Equal-partition entropy against the number of modes
#
# With S fixed, adding modes first increases the entanglement of the equal
# cut. Once M is well above S^2 almost every output is collision-free and
# the curve levels off.

# %%
import numpy as np

from gcsboson import ExperimentConfig, curve, run_mode_saturation

S = 3
Ms = [6, 9, 16, 25, 36, 49, 64, 100]
recs = run_mode_saturation(ExperimentConfig(S=S, M_list=Ms, realizations=50, seed=0))
x, mean, err = curve(recs, x="M", alpha=2)
for M, m, e in zip(x, mean, err):
    print(f"M={M:4d}  S2={m:.3f} +- {e:.3f}")
print("increments:", np.round(np.diff(mean), 3))
