"""Displacement operators on a truncated harmonic-oscillator number basis.

A phase-space displacement by the complex amplitude alpha is generated by
the ladder operators,

    D(alpha) = exp(alpha a_dag - conj(alpha) a),

and sends the vacuum to the coherent state with amplitude alpha.  Composing
two displacements reproduces the displacement by the vector sum up to a pure
phase,

    D(beta) D(alpha) = exp(i Im(conj(alpha) beta)) D(alpha + beta),

and dragging a state around the closed parallelogram alpha, beta, -alpha,
-beta multiplies it by twice that phase.  Everything here works in a finite
basis of dimension ``dim``, so amplitudes are guarded against the truncation
edge (|alpha|^2 <= dim/4) and phases are read off the lower quarter of the
basis, which is the part a guarded displacement cannot push into the edge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from ._util import principal_phase

__all__ = [
    "TruncationError",
    "TruncationCorruptionError",
    "OscillatorScales",
    "ladder_operators",
    "matrix_exponential",
    "displacement_operator",
    "coherent_state",
    "random_state",
    "reliable_dim",
    "composition_phase",
    "loop_phase",
    "displacement_from_hamiltonian",
]

# A loop that returns with less overlap than this has leaked weight past the
# truncation edge; its phase would be meaningless.
OVERLAP_FLOOR = 0.99


class TruncationError(ValueError):
    """Displacement amplitude too large for the requested basis size.

    Raised when |alpha|^2 > dim/4.  ``min_dim`` is the smallest basis
    dimension that admits the amplitude.
    """

    def __init__(self, alpha: complex, dim: int):
        self.alpha = complex(alpha)
        self.dim = int(dim)
        self.min_dim = max(2, math.ceil(4.0 * abs(self.alpha) ** 2))
        super().__init__(
            f"displacement |alpha|^2 = {abs(self.alpha) ** 2:.6g} exceeds "
            f"dim/4 = {self.dim / 4.0:.6g}; increase dim to at least {self.min_dim}"
        )


class TruncationCorruptionError(RuntimeError):
    """A loop leaked weight past the truncation edge; the result is unusable."""


@dataclass(frozen=True)
class OscillatorScales:
    """Length and momentum scales of a harmonic mode.

    x0 = sqrt(2 hbar / (mass omega0)) and p0 = 2 hbar / x0, so that
    x0 * p0 = 2 hbar holds by construction.  A phase-space displacement by
    (X, P) then corresponds to the dimensionless amplitude
    alpha = X/x0 + i P/p0.
    """

    mass: float = 1.0
    omega0: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("mass", "omega0", "hbar"):
            value = getattr(self, name)
            if not (value > 0.0 and math.isfinite(value)):
                raise ValueError(f"{name} must be a positive finite number, got {value}")

    @property
    def x0(self) -> float:
        return math.sqrt(2.0 * self.hbar / (self.mass * self.omega0))

    @property
    def p0(self) -> float:
        return 2.0 * self.hbar / self.x0

    def displacement_amplitude(self, x_shift: float, p_shift: float) -> complex:
        """Dimensionless amplitude alpha = X/x0 + i P/p0 for a shift by (X, P)."""
        return complex(x_shift / self.x0, p_shift / self.p0)


def _check_dim(dim: int) -> int:
    if not isinstance(dim, (int, np.integer)) or dim < 2:
        raise ValueError(f"dim must be an integer >= 2, got {dim!r}")
    return int(dim)


def _check_amplitude(alpha: complex, dim: int) -> complex:
    alpha = complex(alpha)
    if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
        raise ValueError(f"displacement amplitude must be finite, got {alpha!r}")
    if abs(alpha) ** 2 > dim / 4.0:
        raise TruncationError(alpha, dim)
    return alpha


def ladder_operators(dim: int) -> tuple[np.ndarray, np.ndarray]:
    """Lowering and raising operators on a dim-level number basis.

    Returns (a, a_dag) with a[n-1, n] = sqrt(n).  Their commutator is the
    identity except for the last diagonal entry, 1 - dim, which is the
    truncation artifact.
    """
    dim = _check_dim(dim)
    lowering = np.diag(np.sqrt(np.arange(1.0, dim)), k=1).astype(complex)
    return lowering, lowering.conj().T


def matrix_exponential(matrix: np.ndarray) -> np.ndarray:
    """exp(M) for a square matrix, by scaling-and-squaring with a Pade core."""
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise ValueError(f"matrix must be square, got shape {matrix.shape}")
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix exponential requires finite entries")
    return expm(matrix)


def displacement_operator(alpha: complex, dim: int) -> np.ndarray:
    """D(alpha) = exp(alpha a_dag - conj(alpha) a) on a dim-level basis.

    The generator is anti-Hermitian, so the result is unitary; the guard
    |alpha|^2 <= dim/4 keeps the physically populated block far enough from
    the truncation edge that matrix elements between low-lying levels match
    the untruncated operator.
    """
    dim = _check_dim(dim)
    alpha = _check_amplitude(alpha, dim)
    lowering, raising = ladder_operators(dim)
    return matrix_exponential(alpha * raising - alpha.conjugate() * lowering)


def coherent_state(alpha: complex, dim: int) -> np.ndarray:
    """Coherent state amplitudes c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!).

    Computed by the stable recurrence c_n = c_{n-1} alpha / sqrt(n), then
    renormalized so the truncated vector has unit norm.
    """
    dim = _check_dim(dim)
    alpha = _check_amplitude(alpha, dim)
    amps = np.zeros(dim, dtype=complex)
    amps[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(1, dim):
        amps[n] = amps[n - 1] * alpha / math.sqrt(n)
    return amps / np.linalg.norm(amps)


def random_state(dim: int, rng=None, max_level: int | None = None) -> np.ndarray:
    """Haar-random unit vector supported on levels n <= max_level.

    max_level defaults to dim//4: states confined to that block survive a
    guarded displacement loop without touching the truncation edge, which is
    what makes loop phases state-independent in practice.
    """
    dim = _check_dim(dim)
    rng = np.random.default_rng(rng)
    if max_level is None:
        max_level = dim // 4
    if not 0 <= max_level < dim:
        raise ValueError(f"max_level must be in [0, dim), got {max_level}")
    coeffs = rng.normal(size=max_level + 1) + 1j * rng.normal(size=max_level + 1)
    state = np.zeros(dim, dtype=complex)
    state[: max_level + 1] = coeffs / np.linalg.norm(coeffs)
    return state


def reliable_dim(dim: int) -> int:
    """Size of the lower sub-block unaffected by truncation, indices n <= dim/4.

    Under the amplitude guard a displacement reaches upward from level n by
    about |alpha|^2 + 2|alpha| sqrt(n) plus tails; starting at or below dim/4
    that reach stays below dim for guarded amplitudes, starting at dim/2 it
    does not.
    """
    return _check_dim(dim) // 4 + 1


def composition_phase(alpha: complex, beta: complex, dim: int) -> float:
    """Phase theta such that D(beta) D(alpha) = exp(i theta) D(alpha + beta).

    Measured as the phase of trace(D(alpha+beta)^dag D(beta) D(alpha)) over
    the reliable sub-block; equals Im(conj(alpha) beta) up to truncation
    error.  Returns radians in (-pi, pi].
    """
    dim = _check_dim(dim)
    alpha = _check_amplitude(alpha, dim)
    beta = _check_amplitude(beta, dim)
    _check_amplitude(alpha + beta, dim)
    product = displacement_operator(beta, dim) @ displacement_operator(alpha, dim)
    target = displacement_operator(alpha + beta, dim)
    sub = reliable_dim(dim)
    overlap = np.trace((target.conj().T @ product)[:sub, :sub]) / sub
    return principal_phase(float(np.angle(overlap)))


def loop_phase(alpha: complex, beta: complex, state: np.ndarray) -> float:
    """Phase picked up by a state dragged around the closed loop alpha, beta.

    Applies D(-beta) D(-alpha) D(beta) D(alpha) to ``state`` and returns the
    phase of the overlap with the input, in (-pi, pi].  For states clear of
    the truncation edge this is 2 Im(conj(alpha) beta) independent of the
    state; if the loop leaks weight past the edge (overlap magnitude below
    0.99) a TruncationCorruptionError is raised instead of a garbage phase.
    """
    state = np.asarray(state, dtype=complex)
    if state.ndim != 1 or state.size < 2:
        raise ValueError(f"state must be a vector of length >= 2, got shape {state.shape}")
    dim = state.size
    norm = np.linalg.norm(state)
    if abs(norm - 1.0) > 1e-9:
        raise ValueError(f"state must be unit-norm, got norm {norm:.6g}")
    alpha = _check_amplitude(alpha, dim)
    beta = _check_amplitude(beta, dim)
    result = state
    for amplitude in (alpha, beta, -alpha, -beta):
        result = displacement_operator(amplitude, dim) @ result
    overlap = np.vdot(state, result)
    if abs(overlap) < OVERLAP_FLOOR:
        raise TruncationCorruptionError(
            f"loop overlap magnitude {abs(overlap):.4g} is below {OVERLAP_FLOOR}; "
            f"dim = {dim} is too small for this loop and state"
        )
    return principal_phase(float(np.angle(overlap)))


def displacement_from_hamiltonian(
    x_shift: float,
    p_shift: float,
    duration: float,
    scales: OscillatorScales,
    dim: int,
) -> np.ndarray:
    """Unitary generated by the linear displacement Hamiltonian.

    Quantizes H = (p_op * X - x_op * P) / T with x_op = x0 (a + a_dag)/2 and
    p_op = p0 (a - a_dag)/(2i), and returns exp(-i H T / hbar).  The exponent
    reduces to alpha a_dag - conj(alpha) a with alpha = X/x0 + i P/p0, so the
    result equals displacement_operator(alpha, dim) for every positive T.
    """
    dim = _check_dim(dim)
    if not (duration > 0.0 and math.isfinite(duration)):
        raise ValueError(f"duration must be positive and finite, got {duration}")
    alpha = scales.displacement_amplitude(x_shift, p_shift)
    _check_amplitude(alpha, dim)
    lowering, raising = ladder_operators(dim)
    x_op = scales.x0 * (lowering + raising) / 2.0
    p_op = scales.p0 * (lowering - raising) / 2.0j
    hamiltonian = (p_op * x_shift - x_op * p_shift) / duration
    return matrix_exponential(-1j * hamiltonian * duration / scales.hbar)
