# %% [markdown]
# One phase, three formalisms
# ===========================
#
# The point of the whole package: the phase picked up around a displacement
# loop is the same number whether you compute it with
#
#   1. quantum mechanics  - displacement operators on a truncated basis,
#   2. wave mechanics     - position/frequency shifts of a classical wave,
#   3. particle mechanics - the classical action of the loop over hbar.
#
# The dictionary is alpha = X/x0, beta = i P/p0 with P = hbar K, under which
# all three give X P / hbar = X K.

# %%
import math

import numpy as np

from dcplab import actions, fock, waves
from dcplab._util import principal_phase

TWO_PI = 2.0 * math.pi

scales = fock.OscillatorScales()  # natural units: hbar = m = omega0 = 1
length, n_samples = 16.0, 256

print(f"{'X':>6} {'K':>9} {'quantum':>12} {'wave':>12} {'action':>12} {'X*K mod 2pi':>12}")
for mode, x_shift in [(2, 1.4), (3, -0.9), (1, 1.9), (-2, 0.7), (4, -1.6)]:
    k_shift = TWO_PI * mode / length
    p_shift = scales.hbar * k_shift

    # quantum: drag a random low-lying state around the loop
    alpha = complex(x_shift / scales.x0, 0.0)
    beta = complex(0.0, p_shift / scales.p0)
    state = fock.random_state(64, rng=0)
    phi_quantum = fock.loop_phase(alpha, beta, state)

    # wave: run a random band-limited wave around the same loop
    wave = waves.random_wave(length, n_samples, rng=1)
    phi_wave, residual = waves.loop_phase(wave, x_shift, k_shift)
    assert residual < 1e-10

    # action: the rectangle traced by the same displacements
    rectangle = actions.PolygonPath.rectangle(0.0, 0.0, x_shift, p_shift)
    phi_action = actions.quantum_phase_of_loop(rectangle, scales.hbar)

    expected = principal_phase(x_shift * k_shift)
    print(
        f"{x_shift:6.2f} {k_shift:9.4f} {phi_quantum:12.8f} {phi_wave:12.8f} "
        f"{phi_action:12.8f} {expected:12.8f}"
    )

# %% how far apart are the three answers, really?
mode, x_shift = 3, 1.1
k_shift = TWO_PI * mode / length
p_shift = scales.hbar * k_shift
phi_quantum = fock.loop_phase(
    complex(x_shift / scales.x0, 0.0),
    complex(0.0, p_shift / scales.p0),
    fock.random_state(64, rng=2),
)
phi_wave, _ = waves.loop_phase(waves.random_wave(length, n_samples, rng=3), x_shift, k_shift)
phi_action = actions.quantum_phase_of_loop(
    actions.PolygonPath.rectangle(0.0, 0.0, x_shift, p_shift), scales.hbar
)
print("quantum vs wave:  ", abs(principal_phase(phi_quantum - phi_wave)))
print("wave vs action:   ", abs(principal_phase(phi_wave - phi_action)))
print("action vs quantum:", abs(principal_phase(phi_action - phi_quantum)))
