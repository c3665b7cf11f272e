# %% [markdown]
# Displacement operators on a truncated number basis
# ===================================================
#
# D(alpha) = exp(alpha a_dag - conj(alpha) a) shifts a harmonic oscillator in
# phase space.  Two displacements compose up to a pure phase,
# D(beta) D(alpha) = exp(i Im(conj(alpha) beta)) D(alpha + beta), and that
# phase is everything this project is about.  Here we build the operators,
# displace the vacuum, and map the composition phase over the beta plane.

# %%
import pathlib

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from dcplab import fock

OUT = pathlib.Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# %% the ladder operators and their truncation artifact
dim = 64
lowering, raising = fock.ladder_operators(dim)
commutator = lowering @ raising - raising @ lowering
print("commutator diagonal, first 5 entries:", np.diag(commutator)[:5].real)
print("commutator diagonal, last entry:", commutator[-1, -1].real, "(== 1 - dim)")

# %% a displaced vacuum is a coherent state with Poissonian level weights
alpha = 1.4 + 0.6j
vacuum = np.zeros(dim, dtype=complex)
vacuum[0] = 1.0
displaced = fock.displacement_operator(alpha, dim) @ vacuum
analytic = fock.coherent_state(alpha, dim)
print("fidelity |<coherent|D|0>|^2 =", abs(np.vdot(analytic, displaced)) ** 2)

fig, ax = plt.subplots(figsize=(6, 3.5))
levels = np.arange(24)
ax.bar(levels - 0.2, np.abs(displaced[:24]) ** 2, width=0.4, label="operator route")
ax.bar(levels + 0.2, np.abs(analytic[:24]) ** 2, width=0.4, label="closed form")
ax.set_xlabel("level n")
ax.set_ylabel("occupation probability")
ax.set_title(f"displaced vacuum, alpha = {alpha}")
ax.legend()
fig.tight_layout()
fig.savefig(OUT / "coherent_state.png", dpi=120)
print("wrote", OUT / "coherent_state.png")

# %% composition phase across the beta plane, against Im(conj(alpha) beta)
alpha = 0.8
grid = np.linspace(-1.2, 1.2, 21)
measured = np.zeros((grid.size, grid.size))
for i, im in enumerate(grid):
    for j, re in enumerate(grid):
        measured[i, j] = fock.composition_phase(alpha, complex(re, im), dim)
expected = np.imag(np.conj(alpha) * (grid[None, :] + 1j * grid[:, None]))
print("max |measured - Im(conj(alpha) beta)| =", np.max(np.abs(measured - expected)))

fig, (left, right) = plt.subplots(1, 2, figsize=(9, 3.8), sharey=True)
for ax, data, title in ((left, measured, "measured"), (right, expected, "Im(conj(alpha) beta)")):
    image = ax.pcolormesh(grid, grid, data, shading="auto", cmap="RdBu_r")
    ax.set_xlabel("Re beta")
    ax.set_title(title)
left.set_ylabel("Im beta")
fig.colorbar(image, ax=(left, right), label="composition phase (rad)")
fig.savefig(OUT / "composition_phase.png", dpi=120)
print("wrote", OUT / "composition_phase.png")
