# %% [markdown]
# Displacement loops on classical waves
# =====================================
#
# The same composition phase appears with no quantum mechanics at all.  A
# periodic wave can be displaced in position (a delay) and in spatial
# frequency (a phase ramp, what an AOM does to a laser beam).  Undoing both
# displacements in the same order leaves the wave multiplied by exp(i X K).

# %%
import math
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dcplab import waves
from dcplab._util import principal_phase

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)
TWO_PI = 2.0 * math.pi

# %% the two displacement operations, pictured
length, n_samples = 2.0, 256
wave = waves.sine_wave(length, n_samples, mode=2)
shifted = waves.position_displace(wave, 0.25)
ramped = waves.frequency_displace(wave, TWO_PI * 3 / length)

fig, axes = plt.subplots(3, 1, figsize=(7, 6), sharex=True)
axes[0].plot(wave.x, wave.values.real)
axes[0].set_title("original wave")
axes[1].plot(shifted.x, shifted.values.real)
axes[1].set_title("position-displaced by X = 0.25 m")
axes[2].plot(ramped.x, ramped.values.real, label="real part")
axes[2].plot(ramped.x, np.abs(ramped.values), "--", label="envelope")
axes[2].set_title("frequency-displaced by K = 3 modes")
axes[2].set_xlabel("x (m)")
axes[2].legend()
fig.tight_layout()
fig.savefig(OUT / "wave_displacements.png", dpi=120)
print("wrote", OUT / "wave_displacements.png")

# %% the spectrum translates under a frequency displacement
spectrum = waves.fourier_series(wave)
spectrum_after = waves.fourier_series(ramped)
fig, ax = plt.subplots(figsize=(7, 3))
ax.stem(spectrum.modes, np.abs(spectrum.coeffs), markerfmt="C0o", label="before")
ax.stem(spectrum_after.modes, np.abs(spectrum_after.coeffs), markerfmt="C3x", label="after")
ax.set_xlim(-12, 12)
ax.set_xlabel("mode n")
ax.set_ylabel("|c_n|")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "spectrum_shift.png", dpi=120)
print("wrote", OUT / "spectrum_shift.png")

# %% the loop phase is X K no matter what the wave looks like
x_shift = 0.37
k_shift = TWO_PI * 5 / length
for seed in range(4):
    test_wave = waves.random_wave(length, n_samples, rng=seed)
    phi, residual = waves.loop_phase(test_wave, x_shift, k_shift)
    print(
        f"random wave {seed}: phi = {phi:+.12f} rad "
        f"(X K mod 2 pi = {principal_phase(x_shift * k_shift):+.12f}), "
        f"residual = {residual:.2e}"
    )

# %% sweep X at fixed K: the phase is a straight line of slope K (mod 2 pi)
x_values = np.linspace(-1.0, 1.0, 81)
phis = [waves.loop_phase(waves.random_wave(length, n_samples, rng=9), x, k_shift)[0] for x in x_values]
fig, ax = plt.subplots(figsize=(6.5, 3.5))
ax.plot(x_values, phis, ".", label="measured loop phase")
ax.plot(x_values, [principal_phase(x * k_shift) for x in x_values], "-", lw=1, label="X K mod 2 pi")
ax.set_xlabel("position displacement X (m)")
ax.set_ylabel("loop phase (rad)")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "loop_phase_vs_x.png", dpi=120)
print("wrote", OUT / "loop_phase_vs_x.png")
