"""Classical action around phase-space loops."""

import math

import numpy as np
import pytest

from dcplab import actions
from dcplab.actions import PhasePoint, PolygonPath


def star_polygon(rng, n_vertices, scale=3.0):
    """Random simple polygon: points sorted by angle around their centroid."""
    pts = rng.uniform(-scale, scale, size=(n_vertices, 2))
    center = pts.mean(axis=0)
    order = np.argsort(np.arctan2(pts[:, 1] - center[1], pts[:, 0] - center[0]))
    vertices = tuple(PhasePoint(*pts[i]) for i in order)
    return PolygonPath(vertices, (1.0,) * n_vertices, closed=True)


# ------------------------------------------------------- linear Hamiltonians


def test_displacement_hamiltonian_coefficients():
    # H = (p dx - x dp) / T
    h = actions.displacement_hamiltonian(2.0, 0.0, 4.0)
    assert h.coeff_p == pytest.approx(0.5)
    assert h.coeff_x == 0.0
    h = actions.displacement_hamiltonian(0.0, 3.0, 2.0)
    assert h.coeff_p == 0.0
    assert h.coeff_x == pytest.approx(-1.5)
    assert h.value(2.0, 5.0) == pytest.approx(-3.0)


def test_displacement_hamiltonian_flow_realizes_shift():
    rng = np.random.default_rng(0)
    for _ in range(10):
        dx, dp = rng.uniform(-3, 3, 2)
        duration = rng.uniform(0.1, 5.0)
        start = PhasePoint(*rng.uniform(-2, 2, 2))
        h = actions.displacement_hamiltonian(dx, dp, duration)
        end, _ = actions.integrate_trajectory(h, start, duration, steps=50)
        assert end.x == pytest.approx(start.x + dx, abs=1e-10)
        assert end.p == pytest.approx(start.p + dp, abs=1e-10)


def test_displacement_hamiltonian_rejects_bad_duration():
    with pytest.raises(ValueError):
        actions.displacement_hamiltonian(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        actions.displacement_hamiltonian(1.0, 1.0, -1.0)


# ------------------------------------------------------------- polygon paths


def test_polygon_validation():
    square = PolygonPath.rectangle(0.0, 0.0, 1.0, 1.0)
    assert square.n_segments == 4
    with pytest.raises(ValueError):
        PolygonPath((PhasePoint(0, 0), PhasePoint(1, 1)), (1.0, 1.0), closed=True)
    with pytest.raises(ValueError):
        PolygonPath.rectangle(0.0, 0.0, 1.0, 1.0, durations=(1.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        PolygonPath.rectangle(0.0, 0.0, 1.0, 1.0, durations=(1.0, -1.0, 1.0, 1.0))
    with pytest.raises(ValueError):
        PolygonPath((PhasePoint(0, 0), PhasePoint(np.inf, 1), PhasePoint(1, 1)), (1.0,) * 3)


def test_polygon_segments_wrap_around():
    square = PolygonPath.rectangle(0.0, 0.0, 1.0, 1.0)
    segments = list(square.segments())
    assert segments[-1][0] == PhasePoint(0.0, 1.0)
    assert segments[-1][1] == PhasePoint(0.0, 0.0)


# ------------------------------------------------------------ segment action


def test_segment_action_rectangle_legs():
    # the four legs of the rectangle from (x0, 0) by (X, P)
    x0, x_len, p_len = 1.0, 2.0, 1.5
    a = PhasePoint(x0, 0.0)
    b = PhasePoint(x0 + x_len, 0.0)
    c = PhasePoint(x0 + x_len, p_len)
    d = PhasePoint(x0, p_len)
    assert actions.segment_action(a, b) == 0.0
    assert actions.segment_action(b, c) == pytest.approx((x0 + x_len) * p_len)
    assert actions.segment_action(c, d) == 0.0
    assert actions.segment_action(d, a) == pytest.approx(-x0 * p_len)
    total = (
        actions.segment_action(a, b)
        + actions.segment_action(b, c)
        + actions.segment_action(c, d)
        + actions.segment_action(d, a)
    )
    assert total == pytest.approx(x_len * p_len)


def test_segment_action_matches_integrated_action():
    # the closed form against the RK4 action integral, segment by segment
    rng = np.random.default_rng(1)
    for _ in range(20):
        start = PhasePoint(*rng.uniform(-3, 3, 2))
        end = PhasePoint(*rng.uniform(-3, 3, 2))
        duration = rng.uniform(0.2, 4.0)
        h = actions.displacement_hamiltonian(end.x - start.x, end.p - start.p, duration)
        _, integrated = actions.integrate_trajectory(h, start, duration, steps=100)
        assert integrated == pytest.approx(actions.segment_action(start, end), abs=1e-10)


# --------------------------------------------------------------- loop action


def test_loop_action_rectangle_is_area():
    path = PolygonPath.rectangle(1.0, 0.0, 2.0, 1.5)
    assert actions.loop_action(path) == pytest.approx(3.0, rel=1e-12)


def test_loop_action_translation_invariant():
    path = PolygonPath.rectangle(0.0, 0.0, 2.0, 1.5)
    shifted = path.translate(137.0, -29.0)
    assert actions.loop_action(shifted) == pytest.approx(3.0, rel=1e-9)


def test_loop_action_duration_independent():
    vertices = (PhasePoint(0, 0), PhasePoint(2, 0), PhasePoint(2, 3), PhasePoint(0, 3))
    slow = PolygonPath(vertices, (1.0, 1.0, 1.0, 1.0))
    fast = PolygonPath(vertices, (7.0, 0.1, 2.0, 11.0))
    assert actions.loop_action(slow) == actions.loop_action(fast)


def test_loop_action_degenerate_out_and_back():
    path = PolygonPath(
        (PhasePoint(0.3, -0.2), PhasePoint(1.7, 2.2), PhasePoint(0.3, -0.2)),
        (1.0, 1.0, 1.0),
    )
    assert actions.loop_action(path) == pytest.approx(0.0, abs=1e-15)
    assert actions.shoelace_area(path) == pytest.approx(0.0, abs=1e-15)


def test_loop_action_triangle():
    path = PolygonPath(
        (PhasePoint(0, 0), PhasePoint(2, 0), PhasePoint(2, 3)), (1.0, 1.0, 1.0)
    )
    assert actions.loop_action(path) == pytest.approx(3.0, rel=1e-12)


def test_loop_action_requires_closed_path():
    open_path = PolygonPath((PhasePoint(0, 0), PhasePoint(1, 1)), (1.0,), closed=False)
    with pytest.raises(ValueError):
        actions.loop_action(open_path)


def test_loop_action_orientation_antisymmetry():
    rng = np.random.default_rng(2)
    for _ in range(10):
        path = star_polygon(rng, 7)
        forward = actions.loop_action(path)
        backward = actions.loop_action(path.reverse())
        assert backward == pytest.approx(-forward, rel=1e-12, abs=1e-13)


# -------------------------------------------------------------- shoelace area


def test_shoelace_unit_square_orientations():
    ccw = PolygonPath.rectangle(0.0, 0.0, 1.0, 1.0)
    assert actions.shoelace_area(ccw) == pytest.approx(1.0, rel=1e-12)
    assert actions.shoelace_area(ccw.reverse()) == pytest.approx(-1.0, rel=1e-12)


def test_shoelace_regular_hexagon():
    # area of a regular hexagon with circumradius 1 is 3 sqrt(3) / 2
    vertices = tuple(
        PhasePoint(math.cos(2 * math.pi * k / 6), math.sin(2 * math.pi * k / 6))
        for k in range(6)
    )
    path = PolygonPath(vertices, (1.0,) * 6)
    assert actions.shoelace_area(path) == pytest.approx(1.5 * math.sqrt(3.0), rel=1e-12)


def test_loop_action_equals_shoelace_area():
    rng = np.random.default_rng(3)
    for _ in range(50):
        path = star_polygon(rng, int(rng.integers(3, 13)))
        action = actions.loop_action(path)
        area = actions.shoelace_area(path)
        assert action == pytest.approx(area, rel=1e-12, abs=1e-13)


def test_rectangle_tiling_additivity():
    # tile a rectangle n x m; inner edges cancel so sub-loop actions add up
    x0, p0, width, height = -1.0, 2.0, 3.0, 2.0
    outer = actions.loop_action(PolygonPath.rectangle(x0, p0, width, height))
    for n, m in [(2, 2), (3, 5), (8, 8)]:
        tiles = 0.0
        dx, dp = width / n, height / m
        tiles = math.fsum(
            actions.loop_action(
                PolygonPath.rectangle(x0 + i * dx, p0 + j * dp, dx, dp)
            )
            for i in range(n)
            for j in range(m)
        )
        assert tiles == pytest.approx(outer, rel=1e-12)


# --------------------------------------------------------------- integration


def test_integrate_trajectory_conserves_energy():
    h = actions.LinearHamiltonian(coeff_p=1.3, coeff_x=-0.7)
    start = PhasePoint(0.4, -1.1)
    energy0 = h.value(start.x, start.p)
    point = start
    for _ in range(5):
        point, _ = actions.integrate_trajectory(h, point, 0.8, steps=40)
        energy = h.value(point.x, point.p)
        assert abs(energy - energy0) <= 1e-10 * max(1.0, abs(energy0))


def test_integrate_trajectory_rejects_bad_parameters():
    h = actions.LinearHamiltonian(1.0, 1.0)
    with pytest.raises(ValueError):
        actions.integrate_trajectory(h, PhasePoint(0, 0), -1.0, steps=50)
    with pytest.raises(ValueError):
        actions.integrate_trajectory(h, PhasePoint(0, 0), 1.0, steps=5)


# -------------------------------------------------------------- loop quantum


def test_quantum_phase_of_loop():
    hbar = 2.0
    path = PolygonPath.rectangle(0.0, 0.0, math.pi, 1.0)  # area pi, phase pi/2
    assert actions.quantum_phase_of_loop(path, hbar) == pytest.approx(math.pi / 2, rel=1e-12)


def test_quantum_phase_wraps():
    path = PolygonPath.rectangle(0.0, 0.0, 5.0, 2.0)  # action 10
    expected = 10.0 - 2.0 * 2.0 * math.pi  # wrapped into (-pi, pi]
    assert actions.quantum_phase_of_loop(path, 1.0) == pytest.approx(expected, rel=1e-12)


def test_quantum_phase_zero_area():
    path = PolygonPath(
        (PhasePoint(0, 0), PhasePoint(1, 1), PhasePoint(0, 0)), (1.0, 1.0, 1.0)
    )
    assert actions.quantum_phase_of_loop(path) == pytest.approx(0.0, abs=1e-15)


def test_quantum_phase_rejects_bad_hbar():
    path = PolygonPath.rectangle(0.0, 0.0, 1.0, 1.0)
    with pytest.raises(ValueError):
        actions.quantum_phase_of_loop(path, 0.0)
