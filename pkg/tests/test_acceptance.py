"""Acceptance suite: one test per numbered criterion, at stated tolerance.

Run with -v for one pass/fail line per criterion, add -s for the measured
worst-case numbers.  Seeds are fixed so every run exercises the same corpus.
"""

import math
import time

import numpy as np
import pytest

from dcplab import actions, fock, interferometer as ifm, waves
from dcplab._util import principal_phase

TWO_PI = 2.0 * math.pi


def random_amplitude(rng, modulus_max=1.5):
    while True:
        value = complex(*rng.uniform(-modulus_max, modulus_max, 2))
        if abs(value) <= modulus_max:
            return value


def test_criterion_1_quantum_composition_rule():
    # 50 random (alpha, beta), |alpha|,|beta| <= 1.5, dim 64: phase within
    # 1e-6 of Im(conj(alpha) beta) and operator-level identity within 1e-6
    # on the reliable sub-block; under 30 s
    started = time.perf_counter()
    dim = 64
    sub = fock.reliable_dim(dim)
    rng = np.random.default_rng(101)
    worst_phase = worst_norm = 0.0
    for _ in range(50):
        alpha = random_amplitude(rng)
        beta = random_amplitude(rng)
        theta = fock.composition_phase(alpha, beta, dim)
        expected = (alpha.conjugate() * beta).imag
        worst_phase = max(worst_phase, abs(principal_phase(theta - expected)))
        product = fock.displacement_operator(beta, dim) @ fock.displacement_operator(alpha, dim)
        target = fock.displacement_operator(alpha + beta, dim)
        deviation = (product - np.exp(1j * theta) * target)[:sub, :sub]
        worst_norm = max(worst_norm, float(np.linalg.norm(deviation, 2)))
    elapsed = time.perf_counter() - started
    assert worst_phase < 1e-6
    assert worst_norm < 1e-6
    assert elapsed < 30.0
    print(
        f"PASS criterion 1: composition phase within {worst_phase:.2e} rad, "
        f"operator norm within {worst_norm:.2e}, {elapsed:.1f} s"
    )


def test_criterion_2_closed_loop_phase():
    # loop phase = 2 Im(conj(alpha) beta) within 1e-6, spread across 10
    # random states under 1e-8; and the X P / hbar mapping for 10 pairs
    dim = 64
    rng = np.random.default_rng(202)
    worst = 0.0
    worst_spread = 0.0
    for _ in range(10):
        alpha = random_amplitude(rng)
        beta = random_amplitude(rng)
        expected = 2.0 * (alpha.conjugate() * beta).imag
        phases = []
        for _ in range(10):
            state = fock.random_state(dim, rng)
            phi = fock.loop_phase(alpha, beta, state)
            phases.append(phi)
            worst = max(worst, abs(principal_phase(phi - expected)))
        worst_spread = max(worst_spread, max(phases) - min(phases))
    assert worst < 1e-6
    assert worst_spread < 1e-8

    scales = fock.OscillatorScales()
    worst_xp = 0.0
    for _ in range(10):
        x_shift, p_shift = rng.uniform(-1.2, 1.2, 2) * np.array([scales.x0, scales.p0])
        alpha = complex(x_shift / scales.x0, 0.0)
        beta = complex(0.0, p_shift / scales.p0)
        state = fock.random_state(dim, rng)
        phi = fock.loop_phase(alpha, beta, state)
        expected = x_shift * p_shift / scales.hbar
        worst_xp = max(worst_xp, abs(principal_phase(phi - expected)))
    assert worst_xp < 1e-6
    print(
        f"PASS criterion 2: loop phase within {worst:.2e} rad, state spread "
        f"{worst_spread:.2e}, XP/hbar mapping within {worst_xp:.2e} rad"
    )


def test_criterion_3_wave_loop_phase():
    # 100 random (wave, X, commensurate K) triples at 1e-10, then
    # quantum-wave cross-agreement at 1e-6
    n_samples = 256
    rng = np.random.default_rng(303)
    worst_phase = worst_residual = 0.0
    for index in range(100):
        length = float(rng.uniform(0.5, 3.0))
        wave = waves.random_wave(length, n_samples, rng=rng)
        x_shift = float(rng.uniform(-2.0, 2.0)) * length
        mode = int(rng.integers(-n_samples // 8, n_samples // 8 + 1))
        k_shift = TWO_PI * mode / length
        phi, residual = waves.loop_phase(wave, x_shift, k_shift)
        worst_phase = max(worst_phase, abs(principal_phase(phi - x_shift * k_shift)))
        worst_residual = max(worst_residual, residual)
    assert worst_phase < 1e-10
    assert worst_residual < 1e-10

    # same loop phase from the quantum engine with alpha = X/x0,
    # beta = i P/p0 at P = hbar K
    scales = fock.OscillatorScales()
    worst_cross = 0.0
    for mode, length, x_shift in [(2, 10.0, 1.4), (3, 16.0, -0.9), (1, 8.0, 1.9),
                                  (-2, 12.0, 0.7), (4, 25.0, -1.6)]:
        k_shift = TWO_PI * mode / length
        wave = waves.random_wave(length, n_samples, rng=rng)
        phi_wave, residual = waves.loop_phase(wave, x_shift, k_shift)
        assert residual < 1e-10
        p_shift = scales.hbar * k_shift
        alpha = complex(x_shift / scales.x0, 0.0)
        beta = complex(0.0, p_shift / scales.p0)
        state = fock.random_state(64, rng=rng)
        phi_quantum = fock.loop_phase(alpha, beta, state)
        worst_cross = max(worst_cross, abs(principal_phase(phi_quantum - phi_wave)))
    assert worst_cross < 1e-6
    print(
        f"PASS criterion 3: wave loop within {worst_phase:.2e} rad, residual "
        f"{worst_residual:.2e}, quantum-wave agreement within {worst_cross:.2e} rad"
    )


def test_criterion_4_action_equals_area():
    # rectangle action = X P at 1e-12 relative; 100 random simple polygons
    # against shoelace at 1e-12 relative; RK4 against the closed form at 1e-10
    rng = np.random.default_rng(404)
    worst_rect = 0.0
    for _ in range(20):
        x0, p0 = rng.uniform(-5, 5, 2)
        width, height = rng.uniform(0.1, 4.0, 2)
        action = actions.loop_action(actions.PolygonPath.rectangle(x0, p0, width, height))
        worst_rect = max(worst_rect, abs(action - width * height) / (width * height))
    assert worst_rect < 1e-12

    worst_poly = 0.0
    for _ in range(100):
        n_vertices = int(rng.integers(3, 13))
        pts = rng.uniform(-3.0, 3.0, size=(n_vertices, 2))
        center = pts.mean(axis=0)
        order = np.argsort(np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0]))
        path = actions.PolygonPath(
            tuple(actions.PhasePoint(*pts[i]) for i in order),
            (1.0,) * n_vertices,
        )
        action = actions.loop_action(path)
        area = actions.shoelace_area(path)
        worst_poly = max(worst_poly, abs(action - area) / abs(area))
    assert worst_poly < 1e-12

    worst_rk4 = 0.0
    for _ in range(20):
        start = actions.PhasePoint(*rng.uniform(-3, 3, 2))
        end = actions.PhasePoint(*rng.uniform(-3, 3, 2))
        duration = float(rng.uniform(0.2, 4.0))
        h = actions.displacement_hamiltonian(end.x - start.x, end.p - start.p, duration)
        _, integrated = actions.integrate_trajectory(h, start, duration, steps=100)
        worst_rk4 = max(worst_rk4, abs(integrated - actions.segment_action(start, end)))
    assert worst_rk4 < 1e-10
    print(
        f"PASS criterion 4: rectangle within {worst_rect:.2e} rel, polygons "
        f"within {worst_poly:.2e} rel, integrator within {worst_rk4:.2e}"
    )


def test_criterion_5_hamiltonian_quantization():
    # exp(-i H T / hbar) equals the displacement operator within 1e-8 for 20
    # random (X, P, T, mass, omega0), independent of T
    rng = np.random.default_rng(505)
    dim = 32
    worst = 0.0
    for _ in range(20):
        mass, omega0 = rng.uniform(0.2, 3.0, 2)
        scales = fock.OscillatorScales(mass, omega0)
        x_shift = float(rng.uniform(-1.2, 1.2)) * scales.x0
        p_shift = float(rng.uniform(-1.2, 1.2)) * scales.p0
        duration = float(10.0 ** rng.uniform(-2, 3))
        alpha = scales.displacement_amplitude(x_shift, p_shift)
        u = fock.displacement_from_hamiltonian(x_shift, p_shift, duration, scales, dim)
        deviation = np.linalg.norm(u - fock.displacement_operator(alpha, dim), 2)
        worst = max(worst, float(deviation))
    assert worst < 1e-8

    scales = fock.OscillatorScales()
    fast = fock.displacement_from_hamiltonian(0.7, -0.4, 1e-3, scales, dim)
    slow = fock.displacement_from_hamiltonian(0.7, -0.4, 1e3, scales, dim)
    t_dependence = float(np.linalg.norm(fast - slow, 2))
    assert t_dependence < 1e-8
    print(
        f"PASS criterion 5: quantization within {worst:.2e} operator norm, "
        f"T-dependence {t_dependence:.2e}"
    )


def test_criterion_6_interferometer_sweeps():
    # noiseless slopes at 1e-9 relative for 95/195/295 m; 1% noise: slopes
    # within 1% over 20 seeded runs, up and down sweeps agreeing; under 60 s
    started = time.perf_counter()
    sweep_up = tuple(np.linspace(-TWO_PI * 1e6, TWO_PI * 1e6, 21))
    worst_noiseless = 0.0
    for fiber in (95.0, 195.0, 295.0):
        config = ifm.InterferometerConfig(fiber_length=fiber, rf_sweep=sweep_up)
        result = ifm.sweep_experiment(config)
        expected = ifm.delay_path_length(config)
        worst_noiseless = max(worst_noiseless, abs(result.fitted_slope - expected) / expected)
    assert worst_noiseless < 1e-9

    # per-pixel sigma = 1% of the intensity offset, 1024 pixels
    worst_noisy = 0.0
    for seed in range(20):
        config = ifm.InterferometerConfig(
            fiber_length=95.0, rf_sweep=sweep_up, noise_sigma=10.0, rng_seed=seed
        )
        expected = ifm.delay_path_length(config)
        up = ifm.sweep_experiment(config).fitted_slope
        down = ifm.sweep_experiment(
            ifm.InterferometerConfig(
                fiber_length=95.0, rf_sweep=tuple(reversed(sweep_up)),
                noise_sigma=10.0, rng_seed=seed,
            )
        ).fitted_slope
        worst_noisy = max(
            worst_noisy,
            abs(up - expected) / expected,
            abs(down - expected) / expected,
            abs(up - down) / expected,
        )
    elapsed = time.perf_counter() - started
    assert worst_noisy < 0.01
    assert elapsed < 60.0
    print(
        f"PASS criterion 6: noiseless slopes within {worst_noiseless:.2e} rel, "
        f"noisy within {worst_noisy:.2e} rel, {elapsed:.1f} s"
    )


def test_criterion_7_tiling_additivity():
    # every n x m tiling of a rectangle reproduces the outer loop action to
    # 1e-12 relative, for n, m up to 8
    rng = np.random.default_rng(707)
    worst = 0.0
    for _ in range(3):
        x0, p0 = rng.uniform(-4, 4, 2)
        width, height = rng.uniform(0.5, 5.0, 2)
        outer = actions.loop_action(actions.PolygonPath.rectangle(x0, p0, width, height))
        for n in range(1, 9):
            for m in range(1, 9):
                dx, dp = width / n, height / m
                tiles = math.fsum(
                    actions.loop_action(
                        actions.PolygonPath.rectangle(x0 + i * dx, p0 + j * dp, dx, dp)
                    )
                    for i in range(n)
                    for j in range(m)
                )
                worst = max(worst, abs(tiles - outer) / abs(outer))
    assert worst < 1e-12
    print(f"PASS criterion 7: tiling additivity within {worst:.2e} relative")
