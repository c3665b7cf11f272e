"""Unequal-arm fiber interferometer with a swept rf drive.

One arm of the interferometer is a fiber delay of physical length
``fiber_length`` and group index ``n_eff``, so light accumulates an extra
optical path X = n_eff * fiber_length.  An acousto-optic modulator driven at
an rf offset delta_rf above the reference shifts the optical frequency, which
shifts the wavenumber by delta_K = delta_rf / c; the interferometer output
therefore carries the differential phase

    phi = delta_K * X = (delta_rf / c) * n_eff * fiber_length.

The two beams are overlapped at a small tilt, so a camera sees a spatial
fringe pattern whose phase is phi.  Sweeping delta_rf and fitting the fringe
phase at each point recovers X as the slope d(phi)/d(delta_K).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from ._util import principal_phase

__all__ = [
    "SPEED_OF_LIGHT",
    "InterferometerConfig",
    "FringeImage",
    "FringeFit",
    "SweepResult",
    "delay_path_length",
    "differential_phase",
    "point_rng",
    "render_fringes",
    "fit_fringe_phase",
    "sweep_experiment",
    "propagated_slope_tolerance",
    "read_config",
    "write_config",
    "with_seed",
]

SPEED_OF_LIGHT = 299792458.0  # m/s, exact

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class InterferometerConfig:
    """Instrument settings; immutable so sweeps can share one config.

    fiber_length: physical fiber length in meters.
    rf_sweep: rf offsets delta_rf (rad/s) relative to the reference drive, in
        acquisition order (ascending or descending).
    n_eff: fiber group index; default 1.4682 (silica near 1550 nm).
    base_rf_frequency: reference rf drive (rad/s); the differential phase
        depends only on the offsets, never on this value.
    tilt_spatial_frequency: fringe carrier k_t in rad/pixel, 0 < k_t < pi.
    camera_pixels: samples per fringe image, >= 32.
    visibility: fringe contrast in (0, 1].
    intensity_offset: mean intensity (counts), > 0.
    noise_sigma: additive Gaussian intensity noise per pixel (counts), >= 0.
    rng_seed: base seed; each sweep point derives its own child generator.
    """

    fiber_length: float
    rf_sweep: tuple[float, ...]
    n_eff: float = 1.4682
    base_rf_frequency: float = TWO_PI * 80e6
    tilt_spatial_frequency: float = TWO_PI / 64.0
    camera_pixels: int = 1024
    visibility: float = 0.9
    intensity_offset: float = 1000.0
    noise_sigma: float = 0.0
    rng_seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "rf_sweep", tuple(float(v) for v in self.rf_sweep))
        if not (self.fiber_length > 0.0 and math.isfinite(self.fiber_length)):
            raise ValueError(f"fiber_length must be positive and finite, got {self.fiber_length}")
        if not (self.n_eff > 0.0 and math.isfinite(self.n_eff)):
            raise ValueError(f"n_eff must be positive and finite, got {self.n_eff}")
        if not (self.base_rf_frequency > 0.0 and math.isfinite(self.base_rf_frequency)):
            raise ValueError("base_rf_frequency must be positive and finite")
        if not all(math.isfinite(v) for v in self.rf_sweep):
            raise ValueError("rf_sweep values must be finite")
        if not 0.0 < self.tilt_spatial_frequency < math.pi:
            raise ValueError(
                f"tilt_spatial_frequency must be in (0, pi) rad/pixel, "
                f"got {self.tilt_spatial_frequency}"
            )
        if not isinstance(self.camera_pixels, int) or self.camera_pixels < 32:
            raise ValueError(f"camera_pixels must be an integer >= 32, got {self.camera_pixels!r}")
        if not 0.0 < self.visibility <= 1.0:
            raise ValueError(f"visibility must be in (0, 1], got {self.visibility}")
        if not (self.intensity_offset > 0.0 and math.isfinite(self.intensity_offset)):
            raise ValueError(f"intensity_offset must be positive, got {self.intensity_offset}")
        if not (self.noise_sigma >= 0.0 and math.isfinite(self.noise_sigma)):
            raise ValueError(f"noise_sigma must be >= 0, got {self.noise_sigma}")
        if not isinstance(self.rng_seed, int) or self.rng_seed < 0:
            raise ValueError(f"rng_seed must be a non-negative integer, got {self.rng_seed!r}")


@dataclass(frozen=True, eq=False)
class FringeImage:
    """One simulated camera frame and the phase it was rendered with."""

    pixels: np.ndarray
    true_phase: float

    def __post_init__(self):
        pixels = np.asarray(self.pixels, dtype=float).copy()
        pixels.setflags(write=False)
        object.__setattr__(self, "pixels", pixels)


@dataclass(frozen=True)
class FringeFit:
    """Result of the linear fringe fit.

    low_visibility flags fits whose amplitude is too small relative to the
    residual noise for the phase to mean anything.
    """

    phase: float
    amplitude: float
    offset: float
    rms_residual: float
    low_visibility: bool


@dataclass(frozen=True, eq=False)
class SweepResult:
    """Rf sweep outcome, rows sorted by delta_rf.

    fitted_phase is unwrapped along the acquisition order before sorting, so
    it is continuous when the sweep step keeps the per-step phase under pi.
    """

    delta_rf: np.ndarray
    delta_k: np.ndarray
    fitted_phase: np.ndarray
    predicted_phase: np.ndarray
    fitted_slope: float
    fitted_intercept: float
    slope_residual: float

    def __post_init__(self):
        for name in ("delta_rf", "delta_k", "fitted_phase", "predicted_phase"):
            arr = np.asarray(getattr(self, name), dtype=float).copy()
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)


def delay_path_length(config: InterferometerConfig) -> float:
    """Optical path imbalance X = n_eff * fiber_length, in meters."""
    return config.n_eff * config.fiber_length


def differential_phase(config: InterferometerConfig, delta_rf):
    """phi = (delta_rf / c) * n_eff * fiber_length, radians (not wrapped).

    Linear in delta_rf and independent of base_rf_frequency.  Accepts a
    scalar or an array of rf offsets.
    """
    delta_rf = np.asarray(delta_rf, dtype=float)
    phi = (delta_rf / SPEED_OF_LIGHT) * delay_path_length(config)
    return float(phi) if phi.ndim == 0 else phi


def point_rng(config: InterferometerConfig, index: int) -> np.random.Generator:
    """Child generator for sweep point ``index``.

    Seeding each point as (rng_seed, index) makes sweeps bit-identical
    whether points run serially or in parallel, and lets fringe images be
    re-rendered outside the sweep.
    """
    return np.random.default_rng([config.rng_seed, int(index)])


def render_fringes(
    config: InterferometerConfig,
    phase: float,
    rng: np.random.Generator | None = None,
) -> FringeImage:
    """Simulate one camera frame at the given differential phase.

    pixels[y] = intensity_offset * (1 + visibility * cos(k_t y + phase)),
    plus Gaussian noise of scale noise_sigma when it is nonzero.
    """
    if not math.isfinite(phase):
        raise ValueError(f"phase must be finite, got {phase}")
    y = np.arange(config.camera_pixels)
    pixels = config.intensity_offset * (
        1.0 + config.visibility * np.cos(config.tilt_spatial_frequency * y + phase)
    )
    if config.noise_sigma > 0.0:
        if rng is None:
            rng = np.random.default_rng(config.rng_seed)
        pixels = pixels + rng.normal(0.0, config.noise_sigma, size=config.camera_pixels)
    return FringeImage(pixels, float(phase))


def fit_fringe_phase(image, tilt_spatial_frequency: float) -> FringeFit:
    """Extract the fringe phase at a known carrier by linear least squares.

    Fits pixels ~ offset + a cos(k_t y) + b sin(k_t y); the phase is
    atan2(-b, a) in (-pi, pi] and the amplitude is hypot(a, b).  The model is
    linear in its parameters, so the fit is exact and needs no starting
    point.  Accepts a FringeImage or a bare pixel array.
    """
    pixels = np.asarray(getattr(image, "pixels", image), dtype=float)
    if pixels.ndim != 1 or pixels.size < 8:
        raise ValueError(f"need a 1-d pixel array of length >= 8, got shape {pixels.shape}")
    if not np.all(np.isfinite(pixels)):
        raise ValueError("pixel values must be finite")
    if not 0.0 < tilt_spatial_frequency < math.pi:
        raise ValueError(f"tilt_spatial_frequency must be in (0, pi), got {tilt_spatial_frequency}")
    n = pixels.size
    y = np.arange(n)
    design = np.column_stack(
        [np.ones(n), np.cos(tilt_spatial_frequency * y), np.sin(tilt_spatial_frequency * y)]
    )
    coeffs, *_ = np.linalg.lstsq(design, pixels, rcond=None)
    offset, a, b = (float(c) for c in coeffs)
    amplitude = math.hypot(a, b)
    residual = pixels - design @ coeffs
    rms_residual = float(np.sqrt(np.mean(residual**2)))
    # amplitude uncertainty of a two-quadrature fit over n samples
    sigma_amp = rms_residual * math.sqrt(2.0 / n)
    low_visibility = amplitude < 5.0 * sigma_amp or amplitude <= 1e-12 * (abs(offset) + 1.0)
    phase = principal_phase(math.atan2(-b, a))
    return FringeFit(phase, amplitude, offset, rms_residual, low_visibility)


def sweep_experiment(config: InterferometerConfig) -> SweepResult:
    """Render and fit fringes at every rf offset, then fit phase vs delta_K.

    The per-point fitted phases are unwrapped along the acquisition order
    (valid while the per-step phase change stays under pi), a straight line
    with free intercept is fit against delta_K = delta_rf / c, and the rows
    are returned sorted by delta_rf.  The slope estimates the optical path
    imbalance n_eff * fiber_length.
    """
    offsets = np.asarray(config.rf_sweep, dtype=float)
    if offsets.size < 2 or np.unique(offsets).size < 2:
        raise ValueError("rf_sweep needs at least 2 distinct offsets to fit a slope")
    predicted = differential_phase(config, offsets)
    raw = np.empty(offsets.size)
    for i in range(offsets.size):
        image = render_fringes(config, predicted[i], rng=point_rng(config, i))
        raw[i] = fit_fringe_phase(image, config.tilt_spatial_frequency).phase
    fitted = np.unwrap(raw)
    delta_k = offsets / SPEED_OF_LIGHT
    slope, intercept = np.polyfit(delta_k, fitted, 1)
    slope_residual = float(np.sqrt(np.mean((fitted - (slope * delta_k + intercept)) ** 2)))
    order = np.argsort(offsets, kind="stable")
    return SweepResult(
        delta_rf=offsets[order],
        delta_k=delta_k[order],
        fitted_phase=fitted[order],
        predicted_phase=predicted[order],
        fitted_slope=float(slope),
        fitted_intercept=float(intercept),
        slope_residual=slope_residual,
    )


def propagated_slope_tolerance(config: InterferometerConfig) -> float:
    """Acceptance band for |fitted_slope - n_eff * fiber_length|.

    Propagates the per-point phase uncertainty
    sigma_phi = (noise_sigma / (visibility * intensity_offset)) sqrt(2 / N)
    through the straight-line fit, takes 5 sigma, and floors the result at
    1e-9 relative to the expected slope for the noiseless case.
    """
    expected = delay_path_length(config)
    floor = 1e-9 * expected
    if config.noise_sigma == 0.0:
        return floor
    amplitude = config.visibility * config.intensity_offset
    sigma_phi = (config.noise_sigma / amplitude) * math.sqrt(2.0 / config.camera_pixels)
    delta_k = np.asarray(config.rf_sweep, dtype=float) / SPEED_OF_LIGHT
    sxx = float(np.sum((delta_k - delta_k.mean()) ** 2))
    if sxx == 0.0:
        return math.inf
    return max(5.0 * sigma_phi / math.sqrt(sxx), floor)


# Config files are flat "key = value" text; rf_sweep is comma-separated.
# Example:
#     fiber_length = 95
#     rf_sweep = -6283185.3, 0, 6283185.3
#     noise_sigma = 10

_REQUIRED_KEYS = ("fiber_length", "rf_sweep")
_FLOAT_KEYS = (
    "fiber_length",
    "n_eff",
    "base_rf_frequency",
    "tilt_spatial_frequency",
    "visibility",
    "intensity_offset",
    "noise_sigma",
)
_INT_KEYS = ("camera_pixels", "rng_seed")


def read_config(path) -> InterferometerConfig:
    """Parse an InterferometerConfig from a key = value file.

    Keys match the config field names exactly; unknown keys and missing
    required keys (fiber_length, rf_sweep) are errors.  Blank lines and
    #-comments are ignored.
    """
    values: dict = {}
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            if "=" not in text:
                raise ValueError(f"{path}:{lineno}: expected 'key = value', got {line.strip()!r}")
            key, _, raw = text.partition("=")
            key = key.strip()
            raw = raw.strip()
            if key in _FLOAT_KEYS:
                values[key] = float(raw)
            elif key in _INT_KEYS:
                values[key] = int(raw)
            elif key == "rf_sweep":
                values[key] = tuple(float(tok) for tok in raw.split(",") if tok.strip())
            else:
                raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
    for key in _REQUIRED_KEYS:
        if key not in values:
            raise ValueError(f"{path}: missing required config key {key!r}")
    return InterferometerConfig(**values)


def write_config(config: InterferometerConfig, path) -> None:
    """Write a config as a key = value file that read_config parses back."""
    lines = []
    for key in _FLOAT_KEYS:
        lines.append(f"{key} = {getattr(config, key):.17g}")
    for key in _INT_KEYS:
        lines.append(f"{key} = {getattr(config, key)}")
    sweep = ", ".join(f"{v:.17g}" for v in config.rf_sweep)
    lines.append(f"rf_sweep = {sweep}")
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def with_seed(config: InterferometerConfig, rng_seed: int) -> InterferometerConfig:
    """Copy of the config with a different base seed."""
    return replace(config, rng_seed=rng_seed)
