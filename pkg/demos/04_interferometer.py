# %% [markdown]
# Measuring the wave loop phase with a fiber interferometer
# =========================================================
#
# An unequal-arm interferometer realizes the wave displacement loop in
# hardware: the fiber delay is the position displacement X = n_eff * L, and
# the AOM rf offset sets the spatial-frequency displacement K = delta_rf / c.
# The camera fringe phase therefore moves as phi = K X, and sweeping the rf
# recovers the optical path length as the slope d(phi)/dK.

# %%
import math
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dcplab import interferometer as ifm

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)
TWO_PI = 2.0 * math.pi

SWEEP = tuple(np.linspace(-TWO_PI * 1e6, TWO_PI * 1e6, 21))  # +-1 MHz

# %% what the camera sees at two rf offsets, with realistic noise
config = ifm.InterferometerConfig(
    fiber_length=95.0, rf_sweep=SWEEP, noise_sigma=10.0, rng_seed=1
)
fig, axes = plt.subplots(2, 1, figsize=(7, 4.5), sharex=True)
for ax, delta_rf in zip(axes, (0.0, TWO_PI * 0.25e6)):
    phase = ifm.differential_phase(config, delta_rf)
    image = ifm.render_fringes(config, phase, rng=np.random.default_rng(2))
    fit = ifm.fit_fringe_phase(image, config.tilt_spatial_frequency)
    ax.plot(image.pixels[:256], lw=0.8)
    ax.set_title(
        f"delta_rf = {delta_rf / TWO_PI / 1e6:.2f} MHz: fitted phase "
        f"{fit.phase:+.4f} rad (true {phase:+.4f})"
    )
    ax.set_ylabel("counts")
axes[1].set_xlabel("pixel")
fig.tight_layout()
fig.savefig(OUT / "fringes.png", dpi=120)
print("wrote", OUT / "fringes.png")

# %% sweep the rf for three fiber lengths: slope = optical path length
fig, ax = plt.subplots(figsize=(6.5, 4))
for fiber, color in ((95.0, "C3"), (195.0, "C1"), (295.0, "C0")):
    config = ifm.InterferometerConfig(
        fiber_length=fiber, rf_sweep=SWEEP, noise_sigma=10.0, rng_seed=7
    )
    result = ifm.sweep_experiment(config)
    expected = ifm.delay_path_length(config)
    print(
        f"fiber {fiber:5.0f} m: fitted slope {result.fitted_slope:9.4f} m, "
        f"n_eff * L = {expected:9.4f} m "
        f"(error {abs(result.fitted_slope - expected) / expected:.2e} relative)"
    )
    ax.plot(result.delta_k, result.predicted_phase, "-", color=color, lw=1)
    ax.plot(result.delta_k, result.fitted_phase, "o", color=color, ms=4,
            label=f"{fiber:.0f} m fiber")
ax.set_xlabel("delta K (rad/m)")
ax.set_ylabel("differential phase (rad)")
ax.set_title("fringe phase vs spatial-frequency displacement")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "sweep_slopes.png", dpi=120)
print("wrote", OUT / "sweep_slopes.png")

# %% the slope uncertainty propagated from pixel noise, checked empirically
config = ifm.InterferometerConfig(
    fiber_length=95.0, rf_sweep=SWEEP, noise_sigma=10.0, rng_seed=0
)
slopes = [
    ifm.sweep_experiment(ifm.with_seed(config, seed)).fitted_slope for seed in range(50)
]
print(
    f"50 seeded sweeps: slope scatter {np.std(slopes):.3e} m, "
    f"5 sigma tolerance {ifm.propagated_slope_tolerance(config):.3e} m"
)
