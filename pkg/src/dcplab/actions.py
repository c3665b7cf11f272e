"""Classical action of phase-space displacement loops.

A displacement by (dx, dp) over a time T is generated by the linear
Hamiltonian H = (p dx - x dp) / T, whose flow moves every phase point on a
straight line at constant velocity.  The action S = integral(p dx - H dt)
accumulated along such a segment has the closed form

    S = x_start dp + dx dp / 2,

and around a closed polygon the segment actions telescope to the shoelace
signed area.  Dividing by hbar gives the quantum phase of the loop.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Sequence

from ._util import principal_phase

__all__ = [
    "PhasePoint",
    "LinearHamiltonian",
    "PolygonPath",
    "displacement_hamiltonian",
    "segment_action",
    "loop_action",
    "shoelace_area",
    "integrate_trajectory",
    "quantum_phase_of_loop",
]


class PhasePoint(NamedTuple):
    """A point (x, p) in the phase plane."""

    x: float
    p: float


@dataclass(frozen=True)
class LinearHamiltonian:
    """H(x, p) = coeff_p * p + coeff_x * x.

    Hamilton's equations give the constant flow dx/dt = coeff_p,
    dp/dt = -coeff_x, so every trajectory is a straight line.
    """

    coeff_p: float
    coeff_x: float

    def __post_init__(self):
        if not (math.isfinite(self.coeff_p) and math.isfinite(self.coeff_x)):
            raise ValueError("Hamiltonian coefficients must be finite")

    def value(self, x: float, p: float) -> float:
        return self.coeff_p * p + self.coeff_x * x

    def velocity(self) -> float:
        """dx/dt = dH/dp."""
        return self.coeff_p

    def force(self) -> float:
        """dp/dt = -dH/dx."""
        return -self.coeff_x


def displacement_hamiltonian(dx: float, dp: float, duration: float) -> LinearHamiltonian:
    """Hamiltonian H = (p dx - x dp) / T whose flow for time T shifts by (dx, dp)."""
    if not (duration > 0.0 and math.isfinite(duration)):
        raise ValueError(f"duration must be positive and finite, got {duration}")
    return LinearHamiltonian(coeff_p=dx / duration, coeff_x=-dp / duration)


@dataclass(frozen=True)
class PolygonPath:
    """Piecewise-linear path through phase space.

    Each vertex carries the duration of its outgoing segment.  A closed path
    does not repeat its first vertex; the wraparound segment from the last
    vertex back to vertices[0] is implied, so a closed path over n vertices
    has n segments and n durations (an open one has n - 1).
    """

    vertices: tuple[PhasePoint, ...]
    durations: tuple[float, ...]
    closed: bool = True

    def __post_init__(self):
        vertices = tuple(PhasePoint(float(v[0]), float(v[1])) for v in self.vertices)
        durations = tuple(float(t) for t in self.durations)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "durations", durations)
        for v in vertices:
            if not (math.isfinite(v.x) and math.isfinite(v.p)):
                raise ValueError(f"vertex coordinates must be finite, got {v}")
        if any(not (t > 0.0 and math.isfinite(t)) for t in durations):
            raise ValueError("segment durations must be positive and finite")
        minimum = 3 if self.closed else 2
        if len(vertices) < minimum:
            kind = "closed" if self.closed else "open"
            raise ValueError(f"a {kind} path needs at least {minimum} vertices, got {len(vertices)}")
        expected = len(vertices) if self.closed else len(vertices) - 1
        if len(durations) != expected:
            raise ValueError(
                f"expected {expected} durations for {len(vertices)} vertices "
                f"(closed={self.closed}), got {len(durations)}"
            )

    @property
    def n_segments(self) -> int:
        return len(self.durations)

    def segments(self) -> Iterator[tuple[PhasePoint, PhasePoint, float]]:
        """Yield (start, end, duration) for each segment in traversal order."""
        n = len(self.vertices)
        for i, duration in enumerate(self.durations):
            yield self.vertices[i], self.vertices[(i + 1) % n], duration

    def reverse(self) -> "PolygonPath":
        """The same polygon traversed in the opposite orientation."""
        if self.closed:
            vertices = (self.vertices[0],) + self.vertices[:0:-1]
            durations = self.durations[::-1]
        else:
            vertices = self.vertices[::-1]
            durations = self.durations[::-1]
        return PolygonPath(vertices, durations, self.closed)

    def translate(self, dx: float, dp: float) -> "PolygonPath":
        """Rigidly shift every vertex by (dx, dp)."""
        vertices = tuple(PhasePoint(v.x + dx, v.p + dp) for v in self.vertices)
        return PolygonPath(vertices, self.durations, self.closed)

    @classmethod
    def rectangle(
        cls,
        x_start: float,
        p_start: float,
        width: float,
        height: float,
        durations: Sequence[float] = (1.0, 1.0, 1.0, 1.0),
    ) -> "PolygonPath":
        """Closed rectangle: +width in x, +height in p, then back."""
        vertices = (
            PhasePoint(x_start, p_start),
            PhasePoint(x_start + width, p_start),
            PhasePoint(x_start + width, p_start + height),
            PhasePoint(x_start, p_start + height),
        )
        return cls(vertices, tuple(durations), closed=True)


def segment_action(start: PhasePoint, end: PhasePoint) -> float:
    """Action along one straight displacement segment.

    S = integral(p dx - H dt) for the flow of displacement_hamiltonian
    evaluates to x_start * dp + dx * dp / 2, independent of the duration.
    """
    start = PhasePoint(*start)
    end = PhasePoint(*end)
    dx = end.x - start.x
    dp = end.p - start.p
    return start.x * dp + 0.5 * dx * dp


def loop_action(path: PolygonPath) -> float:
    """Total action around a closed path: sum of its segment actions.

    Telescopes to the shoelace signed area, so it is exactly duration- and
    translation-independent.
    """
    if not path.closed:
        raise ValueError("loop action is defined only for closed paths")
    return math.fsum(segment_action(a, b) for a, b, _ in path.segments())


def shoelace_area(path: PolygonPath) -> float:
    """Signed area enclosed by a closed polygon (counterclockwise positive)."""
    if not path.closed:
        raise ValueError("shoelace area is defined only for closed paths")
    if len(path.vertices) < 3:
        raise ValueError("degenerate path: a polygon needs at least 3 vertices")
    terms = []
    n = len(path.vertices)
    for i in range(n):
        a = path.vertices[i]
        b = path.vertices[(i + 1) % n]
        terms.append(a.x * b.p - b.x * a.p)
    return 0.5 * math.fsum(terms)


def integrate_trajectory(
    hamiltonian: LinearHamiltonian,
    start: PhasePoint,
    duration: float,
    steps: int = 100,
) -> tuple[PhasePoint, float]:
    """Integrate Hamilton's equations plus dS/dt = p dx/dt - H by fixed-step RK4.

    Returns (end point, accumulated action).  Serves as the independent check
    on the closed-form segment_action; for a linear Hamiltonian the flow is
    exactly linear, so RK4 reproduces it to rounding.
    """
    start = PhasePoint(*start)
    if not (duration > 0.0 and math.isfinite(duration)):
        raise ValueError(f"duration must be positive and finite, got {duration}")
    if not isinstance(steps, int) or steps < 10:
        raise ValueError(f"steps must be an integer >= 10, got {steps!r}")

    def derivative(state: tuple[float, float, float]) -> tuple[float, float, float]:
        _, p, _ = state
        x_dot = hamiltonian.velocity()
        p_dot = hamiltonian.force()
        s_dot = p * x_dot - hamiltonian.value(state[0], p)
        return (x_dot, p_dot, s_dot)

    h = duration / steps
    state = (start.x, start.p, 0.0)
    for _ in range(steps):
        k1 = derivative(state)
        k2 = derivative(tuple(s + 0.5 * h * k for s, k in zip(state, k1)))
        k3 = derivative(tuple(s + 0.5 * h * k for s, k in zip(state, k2)))
        k4 = derivative(tuple(s + h * k for s, k in zip(state, k3)))
        state = tuple(
            s + (h / 6.0) * (a + 2.0 * b + 2.0 * c + d)
            for s, a, b, c, d in zip(state, k1, k2, k3, k4)
        )
    return PhasePoint(state[0], state[1]), state[2]


def quantum_phase_of_loop(path: PolygonPath, hbar: float = 1.0) -> float:
    """Loop action divided by hbar, wrapped to (-pi, pi]."""
    if not (hbar > 0.0 and math.isfinite(hbar)):
        raise ValueError(f"hbar must be positive and finite, got {hbar}")
    return principal_phase(loop_action(path) / hbar)
