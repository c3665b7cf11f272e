"""Small shared helpers."""

import math


def principal_phase(phi: float) -> float:
    """Wrap an angle in radians to the principal interval (-pi, pi]."""
    return math.pi - (math.pi - phi) % (2.0 * math.pi)
