"""Command-line driver: ``spinframe {verify,correlate,bell,sweep,envelope,rotate}``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error,
3 output could not be written.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import secrets
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from . import correlation as corr
from .checks import run_checks
from .rng import GENERATOR_ID, RngStream
from .samplers import (
    MODELS,
    MeasurementSettings,
    bell_experiment,
    estimate_correlation,
    run_envelopes,
    sweep_theta,
)
from .su2_core import UP, Direction, decompose, spin_state

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

SWEEP_HEADER = ["theta_rad", "analytic", "mc_mean", "mc_stderr", "lhv_mean", "lhv_stderr", "n"]


@dataclass
class RunConfig:
    subcommand: str
    angles: List[float] = field(default_factory=list)
    degrees: bool = False
    n_trials: int = 1
    master_seed: Optional[int] = None
    output_format: str = "table"
    output_path: Optional[str] = None
    options: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.n_trials < 1:
            raise ValueError("n_trials must be >= 1")
        if not all(math.isfinite(a) for a in self.angles):
            raise ValueError("angles must be finite")
        if self.output_format not in ("table", "csv", "json"):
            raise ValueError(f"unknown output format {self.output_format!r}")

    def radians(self) -> List[float]:
        return [math.radians(a) if self.degrees else a for a in self.angles]


@dataclass
class RunReport:
    config: RunConfig
    generator: str
    results: List[Dict[str, Any]]
    duration_ms: float

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, allow_nan=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        raw = json.loads(text)
        return cls(RunConfig(**raw["config"]), raw["generator"], raw["results"], raw["duration_ms"])


# --- formatting -------------------------------------------------------------


def _g6(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return format(v + 0.0, ".6g")
    return "" if v is None else str(v)


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _render_table(rows: List[Dict[str, Any]], color: bool) -> str:
    if not rows:
        return ""
    cols = list(rows[0])
    cells = [[_g6(r.get(c)) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths))]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        out = []
        for text, w in zip(row, widths):
            padded = text.ljust(w)
            if color and text in ("PASS", "FAIL"):
                padded = ("\033[32m" if text == "PASS" else "\033[31m") + padded + "\033[0m"
            out.append(padded)
        lines.append("  ".join(out).rstrip())
    return "\n".join(lines) + "\n"


def _render_csv(rows: List[Dict[str, Any]], header: Optional[List[str]] = None) -> str:
    buf = io.StringIO()
    cols = header or (list(rows[0]) if rows else [])
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(cols)
    for r in rows:
        writer.writerow([_g6(r.get(c)) for c in cols])
    return buf.getvalue()


def _emit(report: RunReport, header: Optional[List[str]] = None, table_rows=None) -> None:
    cfg = report.config
    if cfg.output_format == "json":
        text = report.to_json()
    elif cfg.output_format == "csv":
        text = _render_csv(report.results, header)
    else:
        color = cfg.output_path is None and _use_color(sys.stdout)
        text = _render_table(table_rows if table_rows is not None else report.results, color)
    if cfg.output_path is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    try:
        with open(cfg.output_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise IOError(f"cannot write {cfg.output_path}: {exc}") from exc


def _finish(args, cfg: RunConfig, results, started: float, **emit_kw) -> None:
    elapsed = (time.perf_counter() - started) * 1000.0
    if args.seed is not None:
        # explicit seed: machine output must be byte-identical across runs
        duration = 0.0
    else:
        duration = elapsed
    print(f"elapsed: {elapsed:.1f} ms", file=sys.stderr)
    _emit(RunReport(cfg, GENERATOR_ID, results, duration), **emit_kw)


# --- subcommands ------------------------------------------------------------


def _config(args, subcommand: str, angles=(), **options) -> RunConfig:
    seed = args.seed
    if seed is None and getattr(args, "_needs_seed", False):
        seed = secrets.randbits(63)
        print(f"seed: {seed}", file=sys.stderr)
    return RunConfig(
        subcommand=subcommand,
        angles=[float(a) for a in angles],
        degrees=args.degrees,
        n_trials=args.trials,
        master_seed=seed,
        output_format=args.format or args._default_format,
        output_path=args.out,
        options=options,
    )


def cmd_verify(args) -> int:
    started = time.perf_counter()
    cfg = _config(args, "verify")
    checks = run_checks()
    results = [{"check": c.name, "passed": c.passed, "detail": c.detail} for c in checks]
    table = [{"status": "PASS" if c.passed else "FAIL", "check": c.name, "detail": c.detail} for c in checks]
    _finish(args, cfg, results, started, table_rows=table)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


def cmd_correlate(args) -> int:
    started = time.perf_counter()
    cfg = _config(args, "correlate", [args.theta])
    theta = cfg.radians()[0]
    est = estimate_correlation(
        MeasurementSettings.from_theta(theta), cfg.n_trials, RngStream(cfg.master_seed, 0), args.chunks
    )
    analytic = corr.expected_correlation(theta).value
    diff = est.mean - analytic
    if est.std_error > 0:
        z = diff / est.std_error
    else:
        z = 0.0 if abs(diff) <= 1e-12 else None
    results = [
        {
            "theta_rad": theta,
            "analytic": analytic,
            "mc_mean": est.mean,
            "mc_stderr": est.std_error,
            "z": z,
            "n": est.n_trials,
            "n_pp": est.counts.pp,
            "n_pm": est.counts.pm,
            "n_mp": est.counts.mp,
            "n_mm": est.counts.mm,
        }
    ]
    _finish(args, cfg, results, started)
    return EXIT_OK


def _inequality_fields(prefix: str, rep: corr.InequalityReport) -> Dict[str, Any]:
    return {
        f"{prefix}_lhs": rep.lhs,
        f"{prefix}_rhs": rep.rhs,
        f"{prefix}_margin": rep.margin,
        f"{prefix}_satisfied": rep.satisfied,
    }


def cmd_bell(args) -> int:
    started = time.perf_counter()
    cfg = _config(args, "bell", [args.a, args.b, args.c], model=args.model)
    angles = cfg.radians()
    res = bell_experiment(angles, cfg.n_trials, args.model, cfg.master_seed, args.chunks)
    if res.strategies is not None:
        results = []
        for row in res.strategies:
            results.append(
                {
                    "strategy": "".join("+" if s > 0 else "-" for s in row.strategy.signs),
                    "e_ab": float(row.e_ab),
                    "e_ac": float(row.e_ac),
                    "e_bc": float(row.e_bc),
                    "p_ab": float(row.strategy.plus_plus("a", "b")),
                    "p_ac": float(row.strategy.plus_plus("a", "c")),
                    "p_cb": float(row.strategy.plus_plus("c", "b")),
                    **_inequality_fields("bell", corr.bell_original(row.e_ab, row.e_ac, row.e_bc)),
                    **_inequality_fields(
                        "wigner",
                        corr.wigner_from_probabilities(
                            row.strategy.plus_plus("a", "b"),
                            row.strategy.plus_plus("a", "c"),
                            row.strategy.plus_plus("c", "b"),
                        ),
                    ),
                }
            )
    else:
        results = [
            {
                "model": res.model,
                "n": res.n_trials,
                "e_ab": res.e_ab,
                "e_ac": res.e_ac,
                "e_bc": res.e_bc,
                "p_ab": res.p_ab,
                "p_ac": res.p_ac,
                "p_cb": res.p_cb,
                **_inequality_fields("bell", res.bell),
                **_inequality_fields("wigner", res.wigner),
            }
        ]
    _finish(args, cfg, results, started)
    return EXIT_OK


def cmd_sweep(args) -> int:
    started = time.perf_counter()
    lo, hi = args.theta_min, args.theta_max
    cfg = _config(args, "sweep", [lo, hi], steps=args.steps)
    lo_r, hi_r = cfg.radians()
    grid = [lo_r + (hi_r - lo_r) * k / (args.steps - 1) for k in range(args.steps)]
    rows = sweep_theta(grid, cfg.n_trials, cfg.master_seed, args.chunks)
    results = [
        dict(zip(SWEEP_HEADER, (r.theta, r.analytic, r.mc_mean, r.mc_std_error, r.lhv_mean, r.lhv_std_error, r.n)))
        for r in rows
    ]
    _finish(args, cfg, results, started, header=SWEEP_HEADER)
    return EXIT_OK


def cmd_envelope(args) -> int:
    started = time.perf_counter()
    cfg = _config(args, "envelope", runs=args.runs)
    summary = run_envelopes(args.runs, RngStream(cfg.master_seed, 0))
    results = [
        {
            "run": i,
            "prior_prob": t.prior_prob,
            "observed_card": t.observed_card.value,
            "posterior_prob": t.posterior_prob,
            "bob_card": t.state.bob_card.value,
        }
        for i, t in enumerate(summary.transcripts)
    ]
    results.append(
        {
            "run": "aggregate",
            "prior_prob": summary.bob_hearts_frequency,
            "observed_card": None,
            "posterior_prob": summary.posterior_hits / summary.runs,
            "bob_card": None,
        }
    )
    _finish(args, cfg, results, started)
    return EXIT_OK


def cmd_rotate(args) -> int:
    started = time.perf_counter()
    cfg = _config(args, "rotate", [args.alpha, args.basis])
    alpha, basis = cfg.radians()
    state = spin_state(Direction.planar(alpha), UP)
    c_plus, c_minus = decompose(Direction.planar(alpha), Direction.planar(basis), UP)
    results = [
        {
            "alpha_rad": alpha,
            "basis_rad": basis,
            "up_re": state.up.real,
            "up_im": state.up.imag,
            "down_re": state.down.real,
            "down_im": state.down.imag,
            "c_plus_re": c_plus.real,
            "c_plus_im": c_plus.imag,
            "c_minus_re": c_minus.real,
            "c_minus_im": c_minus.imag,
        }
    ]
    _finish(args, cfg, results, started)
    return EXIT_OK


# --- argument parsing -------------------------------------------------------


def _finite(text: str) -> float:
    v = float(text)
    if not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"angle must be finite, got {text!r}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {text!r}")
    return v


def _u64(text: str) -> int:
    v = int(text)
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError(f"seed must be an unsigned 64-bit integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trials", type=_positive, default=100_000, help="trials per estimate")
    common.add_argument("--seed", type=_u64, default=None, help="master seed (default: fresh entropy, printed)")
    common.add_argument("--format", choices=("table", "csv", "json"), default=None)
    common.add_argument("--out", default=None, help="write output here instead of stdout")
    common.add_argument("--degrees", action="store_true", help="read angle arguments as degrees")
    common.add_argument("--chunks", type=_positive, default=1, help="parallel chunks (results do not depend on it)")

    parser = argparse.ArgumentParser(prog="spinframe", description="Singlet spin-correlation simulator.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", parents=[common], help="run the exact-value checks")
    p.set_defaults(func=cmd_verify, _needs_seed=False, _default_format="table")

    p = sub.add_parser("correlate", parents=[common], help="analytic vs Monte Carlo E(theta)")
    p.add_argument("theta", type=_finite)
    p.set_defaults(func=cmd_correlate, _needs_seed=True, _default_format="table")

    p = sub.add_parser("bell", parents=[common], help="Bell and Wigner inequalities at angles a, b, c")
    p.add_argument("a", type=_finite)
    p.add_argument("b", type=_finite)
    p.add_argument("c", type=_finite)
    p.add_argument("--model", choices=MODELS, default="quantum")
    p.set_defaults(func=cmd_bell, _needs_seed=True, _default_format="table")

    p = sub.add_parser("sweep", parents=[common], help="E(theta) curve as CSV")
    p.add_argument("--min", dest="theta_min", type=_finite, default=0.0)
    p.add_argument("--max", dest="theta_max", type=_finite, default=None, help="default: pi (180 with --degrees)")
    p.add_argument("--steps", type=int, default=13)
    p.set_defaults(func=cmd_sweep, _needs_seed=True, _default_format="csv")

    p = sub.add_parser("envelope", parents=[common], help="sealed-envelope conditional probability demo")
    p.add_argument("--runs", type=_positive, default=1)
    p.set_defaults(func=cmd_envelope, _needs_seed=True, _default_format="table")

    p = sub.add_parser("rotate", parents=[common], help="decompose |n(alpha),+> in another basis")
    p.add_argument("alpha", type=_finite)
    p.add_argument("basis", type=_finite)
    p.set_defaults(func=cmd_rotate, _needs_seed=False, _default_format="table")
    return parser


def _validate(parser: argparse.ArgumentParser, args) -> None:
    if args.command == "bell":
        angles = [math.radians(x) if args.degrees else x for x in (args.a, args.b, args.c)]
        dirs = [Direction.planar(x) for x in angles]
        for i in range(3):
            for j in range(i + 1, 3):
                if dirs[i].dot(dirs[j]) >= 1.0 - 1e-12:
                    parser.error("bell needs three distinct analyser angles")
    if args.command == "sweep":
        if args.theta_max is None:
            args.theta_max = 180.0 if args.degrees else math.pi
        if args.steps < 2:
            parser.error("--steps must be >= 2")
        if not args.theta_min < args.theta_max:
            parser.error("--min must be smaller than --max")


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(parser, args)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except IOError as exc:
        print(f"spinframe: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
