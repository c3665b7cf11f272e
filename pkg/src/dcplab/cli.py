"""Command line front end.

Four subcommands, one per engine:

    dcplab quantum-loop  --alpha 1 --beta i --dim 64 --trials 10
    dcplab wave-loop     --x-shift 0.25 --k-shift 12.566370614359172
    dcplab action-loop   path.csv --hbar 1
    dcplab interferometer instrument.cfg --format csv+svg

Every run writes CSV tables plus a manifest.txt recording the resolved
parameters into --out, and exits 0 exactly when the run satisfies the
engine's phase contract (1 on contract violation, 2 on bad input).  Floats
are serialized with 17 significant digits so round-trips are lossless.
Complex amplitudes are written like 1.5-0.25i ('j' is accepted too).
"""

from __future__ import annotations

import argparse
import math
import sys
from pathlib import Path

import numpy as np

from . import __version__, actions, fock, interferometer, waves
from ._util import principal_phase
from .svgplot import line_scatter_svg

__all__ = ["main", "parse_complex", "format_float", "format_complex"]

LOOP_PHASE_TOL = 1e-6
WAVE_PHASE_TOL = 1e-10
ACTION_REL_TOL = 1e-9


def format_float(value: float) -> str:
    """17 significant digits: enough to reproduce any double exactly."""
    return f"{float(value):.17g}"


def format_complex(value: complex) -> str:
    value = complex(value)
    return f"{value.real:.17g}{value.imag:+.17g}i"


def parse_complex(text: str) -> complex:
    """Parse 'a+bi' style literals ('1.5', 'i', '-0.3+0.25i', 'j' forms too)."""
    cleaned = text.strip().replace(" ", "").replace("i", "j").replace("I", "j")
    try:
        value = complex(cleaned)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"invalid complex literal {text!r}; use forms like '1.5', 'i', '0.3-0.2i'"
        ) from None
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise argparse.ArgumentTypeError(f"complex literal must be finite, got {text!r}")
    return value


def _cell(value) -> str:
    if isinstance(value, (bool, np.bool_)):
        return str(int(value))
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)) and not isinstance(value, float):
        return format_complex(value)
    return format_float(value)


def write_csv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(",".join(header) + "\n")
        for row in rows:
            handle.write(",".join(_cell(v) for v in row) + "\n")


def write_operator_csv(path: Path, matrix: np.ndarray) -> None:
    """Dense operator dump, one line per entry: row, col, re, im."""
    rows = (
        (r, c, matrix[r, c].real, matrix[r, c].imag)
        for r in range(matrix.shape[0])
        for c in range(matrix.shape[1])
    )
    write_csv(path, ["row", "col", "re", "im"], rows)


def write_state_csv(path: Path, state: np.ndarray) -> None:
    rows = ((n, amp.real, amp.imag) for n, amp in enumerate(state))
    write_csv(path, ["n", "re", "im"], rows)


def write_wave_csv(path: Path, wave: waves.SampledWave) -> None:
    rows = ((x, v.real, v.imag) for x, v in zip(wave.x, wave.values))
    write_csv(path, ["x", "re", "im"], rows)


def read_path_csv(path) -> actions.PolygonPath:
    """Read a closed phase-space path from rows of x, p, duration."""
    vertices = []
    durations = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.split("#", 1)[0].strip()
            if not text:
                continue
            fields = [tok.strip() for tok in text.split(",")]
            if len(fields) != 3:
                raise ValueError(f"{path}:{lineno}: expected 'x,p,duration', got {line.strip()!r}")
            try:
                x, p, duration = (float(tok) for tok in fields)
            except ValueError:
                if lineno == 1:  # tolerate a header row
                    continue
                raise ValueError(f"{path}:{lineno}: non-numeric row {line.strip()!r}") from None
            vertices.append(actions.PhasePoint(x, p))
            durations.append(duration)
    return actions.PolygonPath(tuple(vertices), tuple(durations), closed=True)


def _manifest_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (complex, np.complexfloating)) and not isinstance(value, float):
        return format_complex(value)
    if isinstance(value, (tuple, list, np.ndarray)):
        return ", ".join(_manifest_value(v) for v in value)
    return format_float(value)


def write_manifest(outdir: Path, subcommand: str, params: dict, outputs: list[str]) -> None:
    lines = [f"tool = dcplab {__version__}", f"subcommand = {subcommand}"]
    lines += [f"{key} = {_manifest_value(value)}" for key, value in params.items()]
    lines.append("outputs = " + ", ".join(outputs))
    with open(outdir / "manifest.txt", "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")


def _outdir(args) -> Path:
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    return outdir


def cmd_quantum_loop(args) -> int:
    if args.dim < 16:
        raise ValueError(f"--dim must be >= 16, got {args.dim}")
    if args.trials < 1:
        raise ValueError(f"--trials must be >= 1, got {args.trials}")
    seed = 0 if args.seed is None else args.seed
    outdir = _outdir(args)
    analytic = principal_phase(2.0 * (args.alpha.conjugate() * args.beta).imag)
    rng = np.random.default_rng(seed)
    rows = []
    states = []
    for trial in range(args.trials):
        state = fock.random_state(args.dim, rng)
        states.append(state)
        phi = fock.loop_phase(args.alpha, args.beta, state)
        discrepancy = abs(principal_phase(phi - analytic))
        rows.append((trial, phi, analytic, discrepancy))
    worst = max(row[3] for row in rows)
    outputs = ["quantum_loop.csv"]
    write_csv(
        outdir / "quantum_loop.csv",
        ["trial", "loop_phase_rad", "analytic_phase_rad", "discrepancy_rad"],
        rows,
    )
    if args.dump_operators:
        write_operator_csv(outdir / "displacement_alpha.csv", fock.displacement_operator(args.alpha, args.dim))
        write_operator_csv(outdir / "displacement_beta.csv", fock.displacement_operator(args.beta, args.dim))
        write_state_csv(outdir / "state_0.csv", states[0])
        outputs += ["displacement_alpha.csv", "displacement_beta.csv", "state_0.csv"]
    outputs.append("manifest.txt")
    write_manifest(
        outdir,
        "quantum-loop",
        {
            "alpha": args.alpha,
            "beta": args.beta,
            "dim": args.dim,
            "trials": args.trials,
            "seed": seed,
            "out": str(outdir),
            "format": args.format,
        },
        outputs,
    )
    ok = worst <= LOOP_PHASE_TOL
    print(
        f"quantum-loop: phase {rows[0][1]:.12g} rad over {args.trials} trials, "
        f"analytic {analytic:.12g} rad, max discrepancy {worst:.3g} rad "
        f"[{'ok' if ok else 'CONTRACT VIOLATED'}]"
    )
    return 0 if ok else 1


def _build_wave(kind: str, length: float, n_samples: int, seed: int) -> waves.SampledWave:
    name, _, option = kind.partition(":")
    if name == "constant":
        return waves.constant_wave(length, n_samples)
    if name == "sine":
        mode = int(option) if option else 1
        return waves.sine_wave(length, n_samples, mode=mode)
    if name == "random":
        max_mode = int(option) if option else None
        return waves.random_wave(length, n_samples, rng=np.random.default_rng(seed), max_mode=max_mode)
    raise ValueError(f"unknown wave spec {kind!r}; use constant, sine[:mode], or random[:max_mode]")


def cmd_wave_loop(args) -> int:
    seed = 0 if args.seed is None else args.seed
    outdir = _outdir(args)
    wave = _build_wave(args.wave, args.length, args.samples, seed)
    phi, residual = waves.loop_phase(wave, args.x_shift, args.k_shift)
    expected = principal_phase(args.x_shift * args.k_shift)
    discrepancy = abs(principal_phase(phi - expected))
    outputs = ["wave_loop.csv"]
    write_csv(
        outdir / "wave_loop.csv",
        ["x_m", "k_per_m", "phi_rad", "residual"],
        [(args.x_shift, args.k_shift, phi, residual)],
    )
    if args.dump_wave:
        write_wave_csv(outdir / "wave.csv", wave)
        outputs.append("wave.csv")
    outputs.append("manifest.txt")
    write_manifest(
        outdir,
        "wave-loop",
        {
            "x_shift": args.x_shift,
            "k_shift": args.k_shift,
            "length": args.length,
            "samples": args.samples,
            "wave": args.wave,
            "seed": seed,
            "out": str(outdir),
            "format": args.format,
        },
        outputs,
    )
    ok = discrepancy <= WAVE_PHASE_TOL and residual <= WAVE_PHASE_TOL
    print(
        f"wave-loop: phi {phi:.12g} rad, X*K mod 2pi {expected:.12g} rad, "
        f"discrepancy {discrepancy:.3g}, residual {residual:.3g} "
        f"[{'ok' if ok else 'CONTRACT VIOLATED'}]"
    )
    return 0 if ok else 1


def cmd_action_loop(args) -> int:
    outdir = _outdir(args)
    path = read_path_csv(args.path_file)
    segment_rows = []
    segment_values = []
    for index, (start, end, duration) in enumerate(path.segments()):
        value = actions.segment_action(start, end)
        segment_values.append(value)
        segment_rows.append((index, start.x, start.p, end.x, end.p, duration, value))
    total = actions.loop_action(path)
    area = actions.shoelace_area(path)
    phase = actions.quantum_phase_of_loop(path, args.hbar)
    write_csv(
        outdir / "action_segments.csv",
        ["segment", "x_start", "p_start", "x_end", "p_end", "duration_s", "action"],
        segment_rows,
    )
    write_csv(
        outdir / "action_summary.csv",
        ["total_action", "shoelace_area", "quantum_phase_rad", "hbar"],
        [(total, area, phase, args.hbar)],
    )
    outputs = ["action_segments.csv", "action_summary.csv", "manifest.txt"]
    write_manifest(
        outdir,
        "action-loop",
        {
            "path_file": str(args.path_file),
            "vertices": len(path.vertices),
            "hbar": args.hbar,
            "out": str(outdir),
            "format": args.format,
        },
        outputs,
    )
    # zero-area loops are judged against the size of the cancelling terms
    scale = max(abs(area), math.fsum(abs(v) for v in segment_values))
    ok = abs(total - area) <= ACTION_REL_TOL * scale
    print(
        f"action-loop: total action {total:.12g}, enclosed area {area:.12g}, "
        f"phase {phase:.12g} rad at hbar {args.hbar:.6g} "
        f"[{'ok' if ok else 'CONTRACT VIOLATED'}]"
    )
    return 0 if ok else 1


def cmd_interferometer(args) -> int:
    outdir = _outdir(args)
    config = interferometer.read_config(args.config_file)
    if args.seed is not None:
        config = interferometer.with_seed(config, args.seed)
    predicted = interferometer.differential_phase(config, np.asarray(config.rf_sweep))
    steps = np.abs(np.diff(predicted))
    if steps.size and steps.max() >= math.pi:
        print(
            f"warning: sweep step changes the phase by {steps.max():.3g} rad >= pi; "
            "unwrapping may be unreliable, use finer rf steps",
            file=sys.stderr,
        )
    result = interferometer.sweep_experiment(config)
    outputs = ["sweep.csv"]
    write_csv(
        outdir / "sweep.csv",
        ["delta_rf_hz", "delta_k_per_m", "fitted_phase_rad", "predicted_phase_rad"],
        zip(result.delta_rf / (2.0 * math.pi), result.delta_k, result.fitted_phase, result.predicted_phase),
    )
    if args.dump_fringes:
        for index in range(len(config.rf_sweep)):
            image = interferometer.render_fringes(
                config,
                interferometer.differential_phase(config, config.rf_sweep[index]),
                rng=interferometer.point_rng(config, index),
            )
            name = f"fringes_{index}.csv"
            write_csv(outdir / name, ["pixel", "intensity"], enumerate(image.pixels))
            outputs.append(name)
    if args.format == "csv+svg":
        line_scatter_svg(
            outdir / "sweep.svg",
            result.delta_k,
            result.fitted_phase,
            result.delta_k,
            result.predicted_phase,
            xlabel="delta K (rad/m)",
            ylabel="differential phase (rad)",
            title=f"fiber {config.fiber_length:g} m, slope {result.fitted_slope:.6g} m",
        )
        outputs.append("sweep.svg")
    outputs.append("manifest.txt")
    params = {
        "config_file": str(args.config_file),
        "fiber_length": config.fiber_length,
        "n_eff": config.n_eff,
        "base_rf_frequency": config.base_rf_frequency,
        "tilt_spatial_frequency": config.tilt_spatial_frequency,
        "camera_pixels": config.camera_pixels,
        "visibility": config.visibility,
        "intensity_offset": config.intensity_offset,
        "noise_sigma": config.noise_sigma,
        "rf_sweep": config.rf_sweep,
        "seed": config.rng_seed,
        "out": str(outdir),
        "format": args.format,
    }
    write_manifest(outdir, "interferometer", params, outputs)
    expected = interferometer.delay_path_length(config)
    tolerance = interferometer.propagated_slope_tolerance(config)
    ok = abs(result.fitted_slope - expected) <= tolerance
    print(
        f"interferometer: fitted slope {result.fitted_slope:.9g} m, expected "
        f"{expected:.9g} m, tolerance {tolerance:.3g} m "
        f"[{'ok' if ok else 'CONTRACT VIOLATED'}]"
    )
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=".", help="output directory (default: current)")
    common.add_argument("--seed", type=int, default=None, help="rng seed (default 0, or the config's)")
    common.add_argument(
        "--format", choices=("csv", "csv+svg"), default="csv", help="output format (default csv)"
    )

    parser = argparse.ArgumentParser(
        prog="dcplab",
        description="Displacement composition phases: quantum, wave, and action engines.",
    )
    parser.add_argument("--version", action="version", version=f"dcplab {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    quantum = sub.add_parser(
        "quantum-loop",
        parents=[common],
        help="drag random states around a displacement loop in a truncated number basis",
    )
    quantum.add_argument("--alpha", type=parse_complex, required=True, help="first displacement, e.g. 1.2-0.3i")
    quantum.add_argument("--beta", type=parse_complex, required=True, help="second displacement")
    quantum.add_argument("--dim", type=int, default=64, help="basis dimension, >= 16 (default 64)")
    quantum.add_argument("--trials", type=int, default=10, help="number of random states (default 10)")
    quantum.add_argument("--dump-operators", action="store_true", help="also write operator/state CSVs")
    quantum.set_defaults(func=cmd_quantum_loop)

    wave = sub.add_parser(
        "wave-loop",
        parents=[common],
        help="run a periodic wave around a position/frequency displacement loop",
    )
    wave.add_argument("--x-shift", type=float, required=True, help="position displacement X in meters")
    wave.add_argument("--k-shift", type=float, required=True, help="frequency displacement K in rad/m")
    wave.add_argument("--length", type=float, default=1.0, help="spatial period L in meters (default 1)")
    wave.add_argument("--samples", type=int, default=256, help="grid size, power of two (default 256)")
    wave.add_argument(
        "--wave", default="random", help="test wave: constant, sine[:mode], random[:max_mode] (default random)"
    )
    wave.add_argument("--dump-wave", action="store_true", help="also write the wave samples as CSV")
    wave.set_defaults(func=cmd_wave_loop)

    action = sub.add_parser(
        "action-loop",
        parents=[common],
        help="accumulate classical action around a closed phase-space polygon",
    )
    action.add_argument("path_file", help="CSV of x,p,duration rows tracing the loop")
    action.add_argument("--hbar", type=float, default=1.0, help="Planck constant scale (default 1)")
    action.set_defaults(func=cmd_action_loop)

    interf = sub.add_parser(
        "interferometer",
        parents=[common],
        help="simulate a fiber-delay rf sweep and fit the phase slope",
    )
    interf.add_argument("config_file", help="instrument config (key = value lines)")
    interf.add_argument("--dump-fringes", action="store_true", help="also write each fringe image as CSV")
    interf.set_defaults(func=cmd_interferometer)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, fock.TruncationCorruptionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
