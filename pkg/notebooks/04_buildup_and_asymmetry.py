# %% [markdown]
# # Entanglement along the path U^t
#
# A fractional power of the circuit interpolates between the identity
# (t = 0, a product state) and the full Haar unitary (t = 1). The largest
# averaged entropy over all cuts saturates well before t = 1, while the
# equal cut lags behind because early on the photons still sit near the
# left edge.

# %%
import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from gcsboson import ExperimentConfig, curve, maximum_curve, run_asymmetric, run_buildup

fig, ax = plt.subplots(figsize=(6, 4))
for S in (3, 4, 5):
    recs = run_buildup(ExperimentConfig(S=S, M=50, realizations=20, seed=0))
    ts, best, where = maximum_curve(recs, alpha=2)
    ax.plot(ts, best, "o-", label=f"S={S}")
    print(f"S={S}: max entropy {np.round(best, 3).tolist()}")
    print(f"       at cut     {where.tolist()}")
ax.set_xlabel("t")
ax.set_ylabel(r"max$_{M_L}\,\bar S_2$")
ax.legend()
fig.savefig("buildup.png", dpi=120, bbox_inches="tight")

# %% [markdown]
# Full curves at small t are lopsided, with a kink at M_L = S where the
# initially occupied modes end. By t = 1 the mirror symmetry is restored.

# %%
S = 4
recs = run_asymmetric(ExperimentConfig(S=S, M=40, realizations=20, seed=0))
fig, ax = plt.subplots(figsize=(6, 4))
for t in (0.1, 0.5, 1.0):
    x, mean, _ = curve(recs, alpha=2, t=t)
    ax.plot(x, mean, label=f"t={t}")
    second = mean[2:] - 2 * mean[1:-1] + mean[:-2]
    print(f"t={t}: sharpest bend at M_L={x[1:-1][np.argmax(np.abs(second))]}, "
          f"asymmetry {np.abs(mean - mean[::-1]).max():.3f}")
ax.axvline(S, color="grey", lw=0.5)
ax.set_xlabel("$M_L$")
ax.legend()
fig.savefig("asymmetric.png", dpi=120, bbox_inches="tight")
