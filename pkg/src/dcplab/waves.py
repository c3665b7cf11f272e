"""Position and spatial-frequency displacements of periodic sampled waves.

A wave sampled on a uniform grid over one period L can be displaced in
position (shifted along x, off-grid shifts included via band-limited
interpolation) or in spatial frequency (multiplied by a phase ramp
exp(i K x), which translates its spectrum).  The two operations commute only
up to a phase: running position shift X, frequency shift K, then undoing
both in the same order returns the original wave multiplied by exp(i X K).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._util import principal_phase

__all__ = [
    "CommensurabilityError",
    "AliasingError",
    "SampledWave",
    "FourierCoefficients",
    "fourier_series",
    "position_displace",
    "frequency_displace",
    "loop_phase",
    "constant_wave",
    "sine_wave",
    "random_wave",
]

TWO_PI = 2.0 * math.pi


class CommensurabilityError(ValueError):
    """Frequency shift is not an integer multiple of 2 pi / L.

    A non-commensurate ramp would break the periodicity of the wave.
    ``nearest_k`` carries the closest valid shift.
    """

    def __init__(self, k_shift: float, length: float):
        self.k_shift = float(k_shift)
        mode = round(k_shift * length / TWO_PI)
        self.nearest_k = TWO_PI * mode / length
        super().__init__(
            f"frequency shift K = {k_shift!r} is not a multiple of 2*pi/L = "
            f"{TWO_PI / length!r}; nearest commensurate value is {self.nearest_k!r}"
        )


class AliasingError(ValueError):
    """Frequency shift would push spectral content past the Nyquist mode."""


@dataclass(frozen=True, eq=False)
class SampledWave:
    """Complex wave sampled at n equally spaced points over one period.

    length: spatial period L in meters.  values: samples at x_j = j L / n.
    Immutable; n must be a power of two >= 8.
    """

    length: float
    values: np.ndarray

    def __post_init__(self):
        if not (self.length > 0.0 and math.isfinite(self.length)):
            raise ValueError(f"length must be positive and finite, got {self.length}")
        values = np.asarray(self.values, dtype=complex).copy()
        if values.ndim != 1:
            raise ValueError(f"values must be one-dimensional, got shape {values.shape}")
        n = values.size
        if n < 8 or n & (n - 1) != 0:
            raise ValueError(f"n_samples must be a power of two >= 8, got {n}")
        if not np.all(np.isfinite(values)):
            raise ValueError("wave samples must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n_samples(self) -> int:
        return self.values.size

    @property
    def x(self) -> np.ndarray:
        """Sample positions x_j = j L / n."""
        return np.arange(self.n_samples) * (self.length / self.n_samples)

    def norm(self) -> float:
        return float(np.linalg.norm(self.values))


@dataclass(frozen=True, eq=False)
class FourierCoefficients:
    """Fourier-series coefficients c_n of a sampled wave, centered order.

    f(x_j) = sum_n c_n exp(i 2 pi n x_j / L) over modes n in [-N/2, N/2).
    coeffs[i] is the coefficient of mode modes[i].
    """

    length: float
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=complex).copy()
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def n_samples(self) -> int:
        return self.coeffs.size

    @property
    def modes(self) -> np.ndarray:
        n = self.n_samples
        return np.arange(-(n // 2), n - n // 2)

    def coefficient(self, mode: int) -> complex:
        """c_n for a single integer mode n."""
        n = self.n_samples
        if not -(n // 2) <= mode < n - n // 2:
            raise ValueError(f"mode {mode} outside representable range [-{n // 2}, {n - n // 2})")
        return complex(self.coeffs[mode + n // 2])

    def to_wave(self) -> SampledWave:
        """Synthesize the samples back from the coefficients."""
        values = np.fft.ifft(np.fft.ifftshift(self.coeffs)) * self.n_samples
        return SampledWave(self.length, values)


def fourier_series(wave: SampledWave) -> FourierCoefficients:
    """Coefficients c = fftshift(fft(values)) / N; exact inverse of to_wave()."""
    coeffs = np.fft.fftshift(np.fft.fft(wave.values)) / wave.n_samples
    return FourierCoefficients(wave.length, coeffs)


def position_displace(wave: SampledWave, shift: float) -> SampledWave:
    """Displace in position: f(x) -> f(x - shift).

    Implemented in the spectral domain, c_n -> c_n exp(-i 2 pi n shift / L),
    so arbitrary (off-grid) shifts act by band-limited interpolation and a
    shift by a full period is the identity.
    """
    if not math.isfinite(shift):
        raise ValueError(f"shift must be finite, got {shift}")
    n = wave.n_samples
    modes = np.fft.fftfreq(n, d=1.0 / n)  # integer mode numbers in FFT order
    ramp = np.exp(-2j * math.pi * modes * (shift / wave.length))
    values = np.fft.ifft(np.fft.fft(wave.values) * ramp)
    return SampledWave(wave.length, values)


def frequency_displace(wave: SampledWave, k_shift: float) -> SampledWave:
    """Displace in spatial frequency: f(x) -> exp(i K x) f(x).

    K must be an integer multiple m of 2 pi / L (the ramp must share the
    wave's period) and |m| must not exceed N/4 so guarded spectra cannot
    wrap past Nyquist.  The sample at x = 0 is unchanged exactly.
    """
    if not math.isfinite(k_shift):
        raise ValueError(f"k_shift must be finite, got {k_shift}")
    n = wave.n_samples
    mode_exact = k_shift * wave.length / TWO_PI
    mode = round(mode_exact)
    if abs(mode_exact - mode) > 1e-9 * max(1.0, abs(mode_exact)):
        raise CommensurabilityError(k_shift, wave.length)
    if abs(mode) > n // 4:
        raise AliasingError(
            f"frequency shift of {mode} modes exceeds n_samples/4 = {n // 4}; "
            "shifted spectra could wrap past the Nyquist mode"
        )
    # exp(i K x_j) with K = 2 pi m / L and x_j = j L / n; L cancels exactly
    ramp = np.exp(2j * math.pi * mode * np.arange(n) / n)
    return SampledWave(wave.length, wave.values * ramp)


def loop_phase(wave: SampledWave, shift: float, k_shift: float) -> tuple[float, float]:
    """Phase from the closed displacement loop, plus a shape-change residual.

    Applies position shift, frequency shift, then undoes both in that same
    order, and compares the result g to the input f.  Returns (phi, residual)
    with phi = arg<f, g> in (-pi, pi] and residual = ||g - exp(i phi) f|| /
    ||f||.  For alias-free waves g = exp(i shift * k_shift) f exactly, so the
    residual is at the rounding floor and phi = shift * k_shift mod 2 pi.
    """
    if not wave.norm() > 0.0:
        raise ValueError("wave has zero norm; loop phase is undefined")
    g = position_displace(wave, shift)
    g = frequency_displace(g, k_shift)
    g = position_displace(g, -shift)
    g = frequency_displace(g, -k_shift)
    overlap = np.vdot(wave.values, g.values)
    phi = principal_phase(float(np.angle(overlap)))
    residual = float(np.linalg.norm(g.values - np.exp(1j * phi) * wave.values) / wave.norm())
    return phi, residual


def constant_wave(length: float, n_samples: int, value: complex = 1.0) -> SampledWave:
    """Uniform wave; its spectrum is a single peak at mode 0."""
    return SampledWave(length, np.full(n_samples, complex(value)))


def sine_wave(length: float, n_samples: int, mode: int = 1, phase: float = 0.0) -> SampledWave:
    """sin(2 pi mode x / L + phase) sampled on the grid."""
    x = np.arange(n_samples) * (length / n_samples)
    return SampledWave(length, np.sin(TWO_PI * mode * x / length + phase).astype(complex))


def random_wave(length: float, n_samples: int, rng=None, max_mode: int | None = None) -> SampledWave:
    """Random unit-norm wave with content on modes |n| <= max_mode.

    max_mode defaults to n_samples//4, the widest band for which a guarded
    frequency displacement is alias-free, so displacement loops on these
    waves satisfy the exact phase identity.
    """
    rng = np.random.default_rng(rng)
    if max_mode is None:
        max_mode = n_samples // 4
    if not 0 <= max_mode <= n_samples // 2 - 1:
        raise ValueError(f"max_mode must be in [0, n_samples/2), got {max_mode}")
    coeffs = np.zeros(n_samples, dtype=complex)
    center = n_samples // 2
    band = slice(center - max_mode, center + max_mode + 1)
    size = 2 * max_mode + 1
    coeffs[band] = rng.normal(size=size) + 1j * rng.normal(size=size)
    # Parseval: sum_j |v_j|^2 = N sum_n |c_n|^2
    coeffs /= math.sqrt(n_samples) * np.linalg.norm(coeffs)
    return FourierCoefficients(length, coeffs).to_wave()
