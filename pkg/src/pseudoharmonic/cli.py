"""Command-line sweeps: spectrum, classical, measures, renyi, verify.

Exit codes: 0 success, 1 verification or computation failure, 2 usage or
configuration error.  Output is deterministic for a given configuration:
rows come back in input order whatever the worker count.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from . import info_measures as im
from .classical_mechanics import ClassicalState, PhoModel, average_speed, period, symmetry_ratio, turning_points
from .errors import BelowThresholdError, PhoError
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .quantum_solver import energy, make_orbital
from .verification import VerifyConfig, run_checks

SCHEMA_VERSION = 1
UNITS = ("hbar=m=omega=1; quantum lengths in x_2omega, wave vectors in 1/x_2omega, energies in hbar*omega; "
         "classical lengths in x_omega, classical E in D_omega, T in 1/omega")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

def _floats(text: str, what: str) -> list[float]:
    try:
        vals = [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--{what}: expected comma-separated numbers, got {text!r}") from None
    if not vals:
        raise UsageError(f"--{what}: empty list")
    return vals


def _ints(text: str, what: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"--{what}: expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise UsageError(f"--{what}: empty list")
    return vals


def _range(text: str, what: str, geometric: bool) -> list[float]:
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"--{what}: expected lo:hi:count, got {text!r}")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"--{what}: expected lo:hi:count, got {text!r}") from None
    if count < 1:
        raise UsageError(f"--{what}: count must be >= 1")
    if geometric:
        if not (lo > 0 and hi > 0):
            raise UsageError(f"--{what}: log range needs positive bounds")
        return [float(v) for v in np.geomspace(lo, hi, count)]
    return [float(v) for v in np.linspace(lo, hi, count)]


def read_config_file(path: str) -> dict[str, str]:
    """Flat ``key = value`` file; '#' starts a comment; keys are flag names."""
    out = {}
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read config file {path}: {exc}") from None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise UsageError(f"{path}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        out[key.replace("_", "-")] = val
    return out


@dataclass(frozen=True)
class SweepConfig:
    a_values: tuple[float, ...] = (0.0,)
    n_values: tuple[int, ...] = (0,)
    alpha_values: tuple[float, ...] = (0.5, 1.0, 2.0)
    energies: tuple[float, ...] = (1.0,)
    quad: QuadratureSpec = DEFAULT_SPEC
    fmt: str = "csv"
    out: str | None = None
    tol: float | None = None
    quick: bool = False
    workers: int = 1

    def echo(self) -> dict:
        return {
            "a": list(self.a_values), "n": list(self.n_values), "alpha": list(self.alpha_values),
            "energy": list(self.energies), "rel_tol": self.quad.rel_tol, "abs_tol": self.quad.abs_tol,
            "tol": self.tol, "quick": self.quick,
        }


_KEYS = ("a", "a-log-range", "n", "alpha", "alpha-range", "energy", "format", "out",
         "tol", "quick", "workers", "rel-tol", "abs-tol")


def build_config(args: argparse.Namespace) -> SweepConfig:
    settings = read_config_file(args.config) if args.config else {}
    unknown = set(settings) - set(_KEYS)
    if unknown:
        raise UsageError(f"unknown config keys: {', '.join(sorted(unknown))}")
    for key in _KEYS:
        val = getattr(args, key.replace("-", "_"), None)
        if val not in (None, False):
            settings[key] = val if not isinstance(val, bool) else "true"
    if "a" in settings and "a-log-range" in settings:
        raise UsageError("--a and --a-log-range are mutually exclusive")
    if "alpha" in settings and "alpha-range" in settings:
        raise UsageError("--alpha and --alpha-range are mutually exclusive")

    cfg = SweepConfig()
    if "a" in settings:
        cfg = replace(cfg, a_values=tuple(_floats(settings["a"], "a")))
    if "a-log-range" in settings:
        cfg = replace(cfg, a_values=tuple(_range(settings["a-log-range"], "a-log-range", True)))
    if any(not (math.isfinite(a) and a >= 0) for a in cfg.a_values):
        raise UsageError("repulsion values must be finite and >= 0")
    if "n" in settings:
        cfg = replace(cfg, n_values=tuple(_ints(settings["n"], "n")))
    if any(n < 0 for n in cfg.n_values):
        raise UsageError("level indices must be >= 0")
    if "alpha" in settings:
        cfg = replace(cfg, alpha_values=tuple(_floats(settings["alpha"], "alpha")))
    if "alpha-range" in settings:
        cfg = replace(cfg, alpha_values=tuple(_range(settings["alpha-range"], "alpha-range", False)))
    if any(not al > 0 for al in cfg.alpha_values):
        raise UsageError("entropy orders must be > 0")
    if "energy" in settings:
        cfg = replace(cfg, energies=tuple(_floats(settings["energy"], "energy")))
    if any(not (math.isfinite(e) and e > 0) for e in cfg.energies):
        raise UsageError("classical energies must be > 0")
    fmt = settings.get("format", "csv")
    if fmt not in ("csv", "json"):
        raise UsageError(f"--format must be csv or json, got {fmt!r}")
    try:
        quad = QuadratureSpec(
            rel_tol=float(settings.get("rel-tol", DEFAULT_SPEC.rel_tol)),
            abs_tol=float(settings.get("abs-tol", DEFAULT_SPEC.abs_tol)),
        )
        tol = float(settings["tol"]) if "tol" in settings else None
        workers = int(settings.get("workers", 1))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if tol is not None and not tol > 0:
        raise UsageError("--tol must be positive")
    if workers < 1:
        raise UsageError("--workers must be >= 1")
    quick = str(settings.get("quick", "false")).lower() in ("1", "true", "yes")
    return replace(cfg, quad=quad, fmt=fmt, out=settings.get("out"), tol=tol, quick=quick,
                   workers=workers)


# ---------------------------------------------------------------------------
# row producers (module level so worker processes can pickle them)
# ---------------------------------------------------------------------------

def _spectrum_row(job):
    a, n = job
    return {"a": a, "n": n, "E": energy(make_orbital(a, n))}


def _classical_row(job):
    a, e = job
    model = PhoModel(a)
    state = ClassicalState(model, e)
    xm, xp = turning_points(state)
    return {"a": a, "E": e, "x_minus": xm, "x_plus": xp, "r": symmetry_ratio(model, e),
            "T": period(model), "s_avg": average_speed(state)}


def _measures_row(job):
    a, n, quad = job
    return im.measure_report(make_orbital(a, n), quad).as_dict()


def _renyi_row(job):
    a, n, alpha, quad = job
    orb = make_orbital(a, n)
    q = im.renyi_query(orb.model, alpha)
    nan = math.nan
    row = {"a": a, "n": n, "alpha": alpha, "beta": q.beta, "alpha_TH": q.threshold,
           "R_x": nan, "R_k": nan, "T_x": nan, "T_k": nan, "R_k_beta": nan, "T_k_beta": nan,
           "delta_R": nan, "delta_T": nan}
    flags = []
    row["R_x"] = im.renyi_x(orb, alpha, quad)
    row["T_x"] = im.tsallis_x(orb, alpha, quad)
    try:
        row["R_k"] = im.renyi_k(orb, alpha, quad)
        row["T_k"] = im.tsallis_k(orb, alpha, quad)
    except BelowThresholdError:
        flags.append("divergent-momentum")
    if alpha >= 0.5:
        # momentum side of the uncertainty relations, at the conjugate order
        row["R_k_beta"] = im.renyi_k(orb, q.beta, quad)
        if not math.isinf(q.beta):
            row["T_k_beta"] = im.tsallis_k(orb, q.beta, quad)
        else:
            row["T_k_beta"] = 0.0
        row["delta_R"], row["delta_T"] = im.uncertainty_gaps(orb, alpha, quad)
    else:
        flags.append("no-conjugate")
    row["flags"] = ";".join(flags)
    return row


COLUMNS = {
    "spectrum": ("a", "n", "E"),
    "classical": ("a", "E", "x_minus", "x_plus", "r", "T", "s_avg"),
    "measures": im.REPORT_FIELDS,
    "renyi": ("a", "n", "alpha", "beta", "alpha_TH", "R_x", "R_k", "T_x", "T_k",
              "R_k_beta", "T_k_beta", "delta_R", "delta_T", "flags"),
    "verify": ("check", "passed", "residual", "tolerance", "detail"),
}


def _run_rows(fn, jobs, workers: int):
    """Evaluate ``fn`` over ``jobs`` in order; errors carry the failing job."""
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(fn, job) for job in jobs]
            rows = []
            for job, fut in zip(jobs, futures):
                try:
                    rows.append(fut.result())
                except (PhoError, ArithmeticError, ValueError) as exc:
                    raise RowError(_describe(job), exc) from exc
            return rows
    rows = []
    for job in jobs:
        try:
            rows.append(fn(job))
        except (PhoError, ArithmeticError, ValueError) as exc:
            raise RowError(_describe(job), exc) from exc
    return rows


def _describe(job) -> str:
    return ", ".join(str(v) for v in job if not isinstance(v, QuadratureSpec))


class RowError(Exception):
    def __init__(self, where: str, exc: Exception):
        super().__init__(f"row ({where}): {type(exc).__name__}: {exc}")


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------

def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        v = float(v)
        if math.isnan(v):
            return "nan"
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format(v, ".17g")
    return str(v)


def _json_value(v):
    if isinstance(v, (bool, str)) or v is None:
        return v
    if isinstance(v, (int, np.integer)):
        return int(v)
    v = float(v)
    return v if math.isfinite(v) else None


def render(command: str, rows: list[dict], cfg: SweepConfig, extra_meta: dict | None = None) -> str:
    cols = COLUMNS[command]
    meta = {"schema": f"pho-{command}/{SCHEMA_VERSION}", "version": __version__,
            "units": UNITS, "config": cfg.echo()}
    if extra_meta:
        meta.update(extra_meta)
    if cfg.fmt == "json":
        body = {"meta": meta, "rows": [{c: _json_value(r[c]) for c in cols} for r in rows]}
        return json.dumps(body, indent=1) + "\n"
    lines = [f"# schema: {meta['schema']}", f"# version: {meta['version']}",
             f"# units: {UNITS}", f"# config: {json.dumps(meta['config'], sort_keys=True)}"]
    for key, val in (extra_meta or {}).items():
        lines.append(f"# {key}: {val}")
    lines.append(",".join(cols))
    for r in rows:
        lines.append(",".join(_fmt(r[c]) for c in cols))
    return "\n".join(lines) + "\n"


def _emit(text: str, cfg: SweepConfig) -> None:
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_spectrum(cfg: SweepConfig) -> int:
    jobs = [(a, n) for a in cfg.a_values for n in cfg.n_values]
    _emit(render("spectrum", _run_rows(_spectrum_row, jobs, 1), cfg), cfg)
    return EXIT_OK


def cmd_classical(cfg: SweepConfig) -> int:
    jobs = [(a, e) for a in cfg.a_values for e in cfg.energies]
    _emit(render("classical", _run_rows(_classical_row, jobs, 1), cfg), cfg)
    return EXIT_OK


def cmd_measures(cfg: SweepConfig) -> int:
    jobs = [(a, n, cfg.quad) for a in cfg.a_values for n in cfg.n_values]
    _emit(render("measures", _run_rows(_measures_row, jobs, cfg.workers), cfg), cfg)
    return EXIT_OK


def cmd_renyi(cfg: SweepConfig) -> int:
    jobs = [(a, n, al, cfg.quad) for a in cfg.a_values for n in cfg.n_values for al in cfg.alpha_values]
    _emit(render("renyi", _run_rows(_renyi_row, jobs, cfg.workers), cfg), cfg)
    return EXIT_OK


def cmd_verify(cfg: SweepConfig) -> int:
    vcfg = VerifyConfig.quick(cfg.tol) if cfg.quick else VerifyConfig(tol=cfg.tol)
    results = run_checks(vcfg)
    rows = [{"check": r.name, "passed": r.passed, "residual": r.residual,
             "tolerance": r.tolerance, "detail": r.detail} for r in results]
    failed = [r for r in results if not r.passed]
    worst = max(results, key=lambda r: r.residual / r.tolerance)
    summary = {"checks": len(results), "failed": len(failed),
               "worst": f"{worst.name} residual {worst.residual:.3e} tolerance {worst.tolerance:.3e}"}
    _emit(render("verify", rows, cfg, summary), cfg)
    for r in failed:
        print(f"FAIL {r.name}: residual {r.residual:.3e} > tolerance {r.tolerance:.3e} {r.detail}",
              file=sys.stderr)
    print(f"{len(results) - len(failed)}/{len(results)} checks passed", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


COMMANDS = {"spectrum": cmd_spectrum, "classical": cmd_classical, "measures": cmd_measures,
            "renyi": cmd_renyi, "verify": cmd_verify}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pho", description="Pseudoharmonic oscillator sweeps.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("spectrum", "closed-form energies E_n"),
        ("classical", "turning points, symmetry ratio, period and mean speed"),
        ("measures", "moments, Shannon, Fisher, Onicescu and non-Gaussianities"),
        ("renyi", "Renyi/Tsallis entropies and uncertainty gaps"),
        ("verify", "oracle comparisons and invariant checks"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key = value file; flags override it")
        p.add_argument("--a", help="comma-separated repulsion values")
        p.add_argument("--a-log-range", help="lo:hi:count, geometric spacing")
        p.add_argument("--n", help="comma-separated level indices")
        p.add_argument("--alpha", help="comma-separated entropy orders")
        p.add_argument("--alpha-range", help="lo:hi:count, linear spacing")
        p.add_argument("--energy", help="comma-separated classical energies (units of D_omega)")
        p.add_argument("--format", choices=("csv", "json"))
        p.add_argument("--out", help="output file (default stdout)")
        p.add_argument("--tol", type=float, help="override every verification tolerance")
        p.add_argument("--rel-tol", type=float, help="quadrature relative tolerance")
        p.add_argument("--abs-tol", type=float, help="quadrature absolute tolerance")
        p.add_argument("--quick", action="store_true", help="reduced verification grid")
        p.add_argument("--workers", type=int, help="worker processes for row evaluation")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = build_config(args)
    except UsageError as exc:
        print(f"pho {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](cfg)
    except RowError as exc:
        print(f"pho {args.command}: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
