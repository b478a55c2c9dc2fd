"""Command-line driver: reproducible runs with JSON reports and CSV tables.

Every run resolves its configuration (config file, then flag overrides, then
command defaults), executes one named pipeline, and writes a report whose
manifest echoes the full resolved configuration and package version.  Exit
status is 0 when every declared assertion passed, 1 when an assertion or a
module computation failed, and 2 for configuration errors.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__, acceptance, boxint, heattrace, plates, riesz, spectrum, stochastic
from .errors import CaslabError, ConfigError

OUT_ENV_VAR = "CASLAB_OUT"
_FORMATS = ("json", "csv", "both")

_COMMAND_DEFAULTS: dict[str, dict] = {
    "reduce": {"lam": 1.0},
    "spectrum": {"a": 1.0, "alpha": 1.0, "cutoff": 100.0},
    "heat-trace": {"a": 1.0, "alpha": 1.0},
    "finite-part": {"a": 1.0},
    "stochastic": {"tau": 0.5, "cutoff": 200.0, "n_samples": 100_000},
    "boxint": {},
    "plates": {"a": 1.0},
    "calibrate": {"alpha": 1.0, "n_channels": 2},
    "verify-all": {},
}


@dataclass
class RunConfig:
    """Fully resolved run: command, parameters, seed, output destination."""

    command: str
    params: dict = field(default_factory=dict)
    seed: int = 42
    out_dir: Path = Path("caslab-report")
    fmt: str = "json"

    def manifest(self) -> dict:
        return {
            "version": __version__,
            "command": self.command,
            "seed": self.seed,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "out_dir": str(self.out_dir),
            "format": self.fmt,
        }


def _fmt_num(x) -> str:
    return f"{x:.17g}" if isinstance(x, float) else str(x)


def _write_report(config: RunConfig, report: dict, tables: dict[str, list]) -> None:
    config.out_dir.mkdir(parents=True, exist_ok=True)
    body = {"manifest": config.manifest(), **report}
    path = config.out_dir / f"{config.command}.json"
    path.write_text(json.dumps(body, indent=2, sort_keys=True) + "\n")
    if config.fmt in ("csv", "both"):
        for name, rows in tables.items():
            header, data = rows[0], rows[1:]
            lines = [",".join(header)]
            lines += [",".join(_fmt_num(x) for x in row) for row in data]
            (config.out_dir / f"{config.command}_{name}.csv").write_text(
                "\n".join(lines) + "\n"
            )


def _checks_pass(checks: list[dict]) -> bool:
    return all(c["passed"] for c in checks)


def _check(name: str, measured: float, threshold: float) -> dict:
    return {
        "name": name,
        "measured": measured,
        "threshold": threshold,
        "passed": bool(measured <= threshold),
    }


def _run_reduce(config: RunConfig):
    lam = config.params["lam"]
    checks = []
    rows = [("m", "s", "closed", "momentum", "schwinger")]
    for m, s in ((1, 3.0), (2, 2.0), (3, 2.5), (3, 4.0), (4, 3.0)):
        closed = riesz.reduction_constant(m, s) * lam ** (0.5 * m - s)
        mom = riesz.momentum_integral(m, s, lam)
        sch = riesz.schwinger_integral(m, s, lam)
        rows.append((float(m), s, closed, mom, sch))
        checks.append(
            _check(f"momentum vs closed (m={m}, s={s})", abs(mom - closed) / closed, 1e-7)
        )
        checks.append(
            _check(f"schwinger vs closed (m={m}, s={s})", abs(sch - closed) / closed, 1e-7)
        )
    c1, c3, nested = riesz.two_step_chain(lam)
    target = c1 * c3 / lam
    checks.append(_check("two-step chain nested vs stagewise", abs(nested - target) / target, 1e-7))
    report = {
        "lam": lam,
        "two_step_chain": {"c_1d": c1, "c_3d": c3, "nested": nested},
        "checks": checks,
    }
    return report, {"constants": rows}, _checks_pass(checks)


def _run_spectrum(config: RunConfig):
    a, alpha, cutoff = (
        config.params["a"],
        config.params["alpha"],
        config.params["cutoff"],
    )
    l1, l2 = alpha * a, a / alpha
    box = spectrum.BoxSpec(
        (
            spectrum.AxisSpec(l1, spectrum.Bc.NEUMANN),
            spectrum.AxisSpec(l2, spectrum.Bc.NEUMANN),
            spectrum.AxisSpec(a, spectrum.Bc.DIRICHLET),
        )
    )
    stream = spectrum.enumerate_modes(box, cutoff)
    sat = spectrum.saturation_check(l1, l2, a)
    report = {
        "cell": {"l1": l1, "l2": l2, "a": a},
        "stream": json.loads(stream.to_json()),
        "mode_count": stream.mode_count,
        "lateral_gap": spectrum.lateral_gap(l1, l2),
        "saturation": {"saturated": sat.saturated, "ratio": sat.ratio},
        "checks": [],
    }
    rows = [("value", "multiplicity")]
    rows += [(v, float(m)) for v, m in stream.values]
    return report, {"modes": rows}, True


def _run_heat_trace(config: RunConfig):
    a, alpha = config.params["a"], config.params["alpha"]
    l1, l2 = alpha * a, a / alpha
    grid = heattrace.short_time_grid()
    rows = [("t", "trace")]
    rows += [(float(t), heattrace.mixed_cell_heat_trace(l1, l2, a, float(t))) for t in grid]
    coeffs = heattrace.short_time_coefficients(l1, l2, a)
    b_closed = heattrace.b_coefficient(l1, l2, a)  # raises if the fit disagrees
    vol = l1 * l2 * a / (8.0 * math.pi**1.5)
    checks = [
        _check("fitted volume coefficient", abs(coeffs["t^-3/2"] - vol) / vol, 1e-3),
        _check("fitted area coefficient vs B", abs(coeffs["t^-1"] - b_closed) / b_closed, 1e-2),
    ]
    report = {
        "cell": {"l1": l1, "l2": l2, "a": a},
        "coefficients": coeffs,
        "b_closed_form": b_closed,
        "checks": checks,
    }
    return report, {"trace": rows}, _checks_pass(checks)


def _run_finite_part(config: RunConfig):
    a = config.params["a"]
    grid = plates.default_tau_grid(a)
    samples = [plates.per_area_trace(a, float(t)) for t in grid]
    model = heattrace.finite_part(samples, plates.PLATE_EXPONENTS)
    target = -math.pi**2 / (1440.0 * a**3)
    checks = [
        _check("finite part vs -pi^2/(1440 a^3)", abs(model.c0 - target) / abs(target), 5e-3)
    ]
    rows = [("tau", "value")]
    rows += [(s.tau, s.value) for s in samples]
    report = {"a": a, "model": json.loads(model.to_json()), "checks": checks}
    return report, {"samples": rows}, _checks_pass(checks)


def _run_stochastic(config: RunConfig):
    tau = config.params["tau"]
    cutoff = config.params["cutoff"]
    n = config.params["n_samples"]
    axis = spectrum.AxisSpec(1.0, spectrum.Bc.DIRICHLET)
    stream = spectrum.enumerate_modes(spectrum.BoxSpec((axis, axis, axis)), cutoff)
    trace = heattrace.regulated_trace(stream, tau)
    est = stochastic.mc_estimate(
        stochastic.SourceSpec(stream=stream, tau=tau), n=n, seed=config.seed
    )
    z = abs(est.mean - trace.value) / est.stderr
    checks = [_check("MC mean vs trace (z-score)", z, 3.0)]
    report = {
        "tau": tau,
        "cutoff": cutoff,
        "trace": json.loads(trace.to_json()),
        "estimate": json.loads(est.to_json()),
        "z_score": z,
        "checks": checks,
    }
    return report, {}, _checks_pass(checks)


def _run_boxint(config: RunConfig):
    alphas = (0.5, 2.0 / 3.0, 0.75, 1.0, 4.0 / 3.0, 1.5, 2.0)
    delta_rows = [("alpha", "delta")]
    deltas = {}
    for al in alphas:
        deltas[al] = boxint.delta_alpha(al, boxint.DeltaMethod.T_INTEGRAL)
        delta_rows.append((al, deltas[al]))
    scan = boxint.log_concavity_scan()
    chain = boxint.positivity_chain()
    margin_rows = [("t", "max_second_difference")]
    for t in np.geomspace(1e-2, 1e2, 25):
        worst = max(
            boxint.second_difference_margin(float(t), float(u), scan.h_step)
            for u in np.linspace(-3.0, 3.0, 61)
        )
        margin_rows.append((float(t), worst))
    checks = [
        _check("closed form vs TIntegral", abs(deltas[1.0] - boxint.delta_cube_closed_form()), 1e-6),
        _check("concavity margin (max second difference)", scan.max_second_difference, -1e-12),
        _check("positivity chain derivative identity", chain.max_derivative_rel_err, 1e-6),
    ]
    flags = {"concavity_passed": scan.passed, "positivity_passed": chain.passed}
    report = {
        "deltas": {f"{al:.6f}": d for al, d in deltas.items()},
        "concavity": json.loads(scan.to_json()),
        "positivity": json.loads(chain.to_json()),
        "checks": checks,
        **flags,
    }
    ok = _checks_pass(checks) and scan.passed and chain.passed
    return report, {"delta": delta_rows, "concavity": margin_rows}, ok


def _run_plates(config: RunConfig):
    a = config.params["a"]
    grid = plates.default_tau_grid(a)
    samples = [plates.per_area_trace(a, float(t)) for t in grid]
    fit = plates.casimir_per_area(a, plates.CasimirMethod.HEAT_FIT)
    zeta = plates.casimir_per_area(a, plates.CasimirMethod.ZETA_ROUTE)
    checks = [_check("HeatFit vs ZetaRoute", abs(fit - zeta) / abs(zeta), 5e-3)]
    rows = [("tau", "trace")]
    rows += [(s.tau, s.value) for s in samples]
    report = {
        "a": a,
        "casimir_heat_fit": fit,
        "casimir_zeta_route": zeta,
        "checks": checks,
    }
    return report, {"trace": rows}, _checks_pass(checks)


def _run_calibrate(config: RunConfig):
    alpha = config.params["alpha"]
    n_channels = config.params["n_channels"]
    closed = plates.theta_bar(alpha, n_channels, plates.ThetaSource.CLOSED_FORM)
    pipe = plates.theta_bar(alpha, n_channels, plates.ThetaSource.PIPELINE)
    checks = [
        _check(
            "pipeline vs closed form",
            abs(pipe.pipeline_value - closed.theta_bar) / closed.theta_bar,
            plates.PIPELINE_TOLERANCE,
        )
    ]
    rows = [("alpha", "theta_bar")]
    for al in (0.5, 0.75, 1.0, 1.5, 2.0):
        rows.append(
            (al, plates.theta_bar(al, n_channels, plates.ThetaSource.CLOSED_FORM).theta_bar)
        )
    report = {
        "theta_bar": json.loads(pipe.to_json()),
        "closed_form": json.loads(closed.to_json()),
        "checks": checks,
    }
    return report, {"theta": rows}, _checks_pass(checks)


def _run_verify_all(config: RunConfig):
    results = acceptance.run_all(seed=config.seed)
    for r in results:
        print(r.summary_line())
    report = json.loads(acceptance.report_json(results))
    return report, {}, report["passed"]


_RUNNERS = {
    "reduce": _run_reduce,
    "spectrum": _run_spectrum,
    "heat-trace": _run_heat_trace,
    "finite-part": _run_finite_part,
    "stochastic": _run_stochastic,
    "boxint": _run_boxint,
    "plates": _run_plates,
    "calibrate": _run_calibrate,
    "verify-all": _run_verify_all,
}


def run(config: RunConfig) -> int:
    """Execute one resolved run; returns the process exit status."""
    if config.command not in _RUNNERS:
        raise ConfigError(f"unknown command {config.command!r}")
    try:
        report, tables, passed = _RUNNERS[config.command](config)
    except CaslabError as exc:
        failure = {
            "passed": False,
            "failure": {"type": type(exc).__name__, "message": str(exc)},
        }
        _write_report(config, failure, {})
        print(f"{config.command}: FAIL ({type(exc).__name__}: {exc})", file=sys.stderr)
        return 1
    report.setdefault("passed", passed)
    _write_report(config, report, tables)
    print(f"{config.command}: {'PASS' if passed else 'FAIL'} "
          f"(report in {config.out_dir})")
    return 0 if passed else 1


def _load_config_file(path: str) -> dict:
    try:
        raw = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    if not isinstance(raw, dict):
        raise ConfigError("config file must hold a JSON object")
    return raw


_FLAG_KEYS = ("tau", "alpha", "a", "L", "n_samples", "cutoff", "lam", "n_channels")


def build_config(args: argparse.Namespace) -> RunConfig:
    command = args.command
    file_cfg = _load_config_file(args.config) if args.config else {}
    allowed = set(_FLAG_KEYS) | {"seed", "out", "format"}
    unknown = set(file_cfg) - allowed
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    params = dict(_COMMAND_DEFAULTS[command])
    for key in _FLAG_KEYS:
        if key in file_cfg and key in params:
            params[key] = file_cfg[key]
        cli_val = getattr(args, key, None)
        if cli_val is not None:
            if key not in params:
                raise ConfigError(f"flag --{key.replace('_', '-')} does not apply to {command}")
            params[key] = cli_val
    for key, value in params.items():
        if not isinstance(value, (int, float)):
            raise ConfigError(f"parameter {key} must be numeric, got {value!r}")
    seed = args.seed if args.seed is not None else file_cfg.get("seed", 42)
    if not isinstance(seed, int):
        raise ConfigError("seed must be an integer")
    out = args.out or file_cfg.get("out") or os.environ.get(OUT_ENV_VAR) or "caslab-report"
    fmt = args.format or file_cfg.get("format") or "json"
    if fmt not in _FORMATS:
        raise ConfigError(f"format must be one of {_FORMATS}")
    return RunConfig(
        command=command, params=params, seed=seed, out_dir=Path(out), fmt=fmt
    )


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file; flags override it")
    common.add_argument("--seed", type=int, default=None, help="RNG seed (default 42)")
    common.add_argument("--out", default=None, help=f"output directory (or ${OUT_ENV_VAR})")
    common.add_argument("--format", choices=_FORMATS, default=None,
                        help="report format: json, csv, or both (default json)")
    parser = argparse.ArgumentParser(
        prog="caslab",
        description="Spectral heat-kernel laboratory: verified runs with JSON/CSV reports",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, flags: tuple[str, ...]):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if "lam" in flags:
            p.add_argument("--lam", type=float, help="spectral value lambda")
        if "a" in flags:
            p.add_argument("--a", type=float, help="transverse width a")
        if "alpha" in flags:
            p.add_argument("--alpha", type=float, help="aspect ratio alpha")
        if "L" in flags:
            p.add_argument("--L", type=float, help="lateral period L")
        if "tau" in flags:
            p.add_argument("--tau", type=float, help="heat regulator tau")
        if "cutoff" in flags:
            p.add_argument("--cutoff", type=float, help="eigenvalue cutoff")
        if "n_samples" in flags:
            p.add_argument("--n-samples", dest="n_samples", type=int,
                           help="Monte Carlo sample count")
        if "n_channels" in flags:
            p.add_argument("--n-channels", dest="n_channels", type=int,
                           help="scalar channel count N")
        return p

    add("reduce", "reduction constants, Schwinger route, two-step chain", ("lam",))
    add("spectrum", "enumerate a mixed cell and report the lateral gap",
        ("a", "alpha", "cutoff"))
    add("heat-trace", "mixed-cell trace table and short-time coefficients",
        ("a", "alpha"))
    add("finite-part", "per-area plate trace fit and finite part", ("a",))
    add("stochastic", "Monte Carlo check of the stochastic trace identity",
        ("tau", "cutoff", "n_samples"))
    add("boxint", "Delta(alpha) table, concavity scan, positivity chain", ())
    add("plates", "plate pipeline: HeatFit vs ZetaRoute", ("a",))
    add("calibrate", "calibration coefficient, closed form and pipeline",
        ("alpha", "n_channels"))
    add("verify-all", "run the full acceptance suite", ())
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        config = build_config(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
