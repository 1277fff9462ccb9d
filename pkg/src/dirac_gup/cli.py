"""Command-line front end.

Every subcommand writes one table, CSV (header row, LF endings) or JSON (a
single object with ``config``, ``results`` and ``diagnostics``).  A JSON file
given with ``--config`` supplies a full run configuration; flags on the
command line override it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from dirac_gup.algebra import OscillatorParams, make_grid, p_bound
from dirac_gup.errors import ConvergenceError, ParameterDomainError
from dirac_gup.figures import FIG1_ALPHAS, emit_fig1_bundle, format_float
from dirac_gup.oracle import compare_with_analytic
from dirac_gup.spectrum import Branch, build_spectrum, spectrum_levels
from dirac_gup.statmech import Convention, Method, Variant, partition_evaluator, thermo_sweep
from dirac_gup.wavefunction import annihilation_residual, normalize_ground_state

SUBCOMMANDS = ("spectrum", "partition", "thermo", "oracle", "wavefunction", "fig1")
PARAM_FIELDS = ("m", "omega", "alpha", "gamma", "p_bound")

OPTION_DEFAULTS = {
    "spectrum": {"branch": "zero", "n_max": None, "e_cut": None},
    "partition": {
        "method": "direct",
        "convention": "consistent",
        "variant": "max-momentum",
        "t_min": 0.1,
        "t_max": 5.0,
        "t_steps": 50,
        "e_cut": None,
    },
    "thermo": {
        "method": "direct",
        "convention": "consistent",
        "variant": "max-momentum",
        "t_min": 0.1,
        "t_max": 5.0,
        "t_steps": 50,
        "e_cut": None,
    },
    "oracle": {"grid_points": 2001, "levels": 4, "p_cut": None},
    "wavefunction": {"branch": "zero", "grid_points": 2001},
    "fig1": {
        "outdir": "fig1",
        "alphas": list(FIG1_ALPHAS),
        "method": "direct",
        "convention": "consistent",
        "variant": "max-momentum",
        "t_min": 0.1,
        "t_max": 5.0,
        "t_steps": 50,
        "svg": True,
    },
}
DEFAULT_FORMAT = {"oracle": "json"}


class ConfigError(ValueError):
    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


@dataclass
class RunConfig:
    subcommand: str
    params: OscillatorParams = field(default_factory=OscillatorParams)
    output_format: str = "csv"
    output_path: str | None = None
    options: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "subcommand": self.subcommand,
            "params": self.params.to_dict(),
            "output_format": self.output_format,
            "output_path": self.output_path,
            "options": dict(self.options),
        }

    @classmethod
    def from_dict(cls, data: dict) -> RunConfig:
        unknown = set(data) - {"subcommand", "params", "output_format", "output_path", "options"}
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}", field=sorted(unknown)[0])
        sub = data.get("subcommand")
        if sub not in SUBCOMMANDS:
            raise ConfigError(f"subcommand must be one of {SUBCOMMANDS}, got {sub!r}", field="subcommand")
        raw_params = dict(data.get("params") or {})
        bad = set(raw_params) - set(PARAM_FIELDS)
        if bad:
            raise ConfigError(f"unknown params: {sorted(bad)}", field=sorted(bad)[0])
        options = dict(OPTION_DEFAULTS[sub])
        given = dict(data.get("options") or {})
        bad = set(given) - set(options)
        if bad:
            raise ConfigError(f"unknown options for {sub}: {sorted(bad)}", field=sorted(bad)[0])
        options.update(given)
        fmt = data.get("output_format") or DEFAULT_FORMAT.get(sub, "csv")
        if fmt not in ("csv", "json"):
            raise ConfigError(f"output_format must be csv or json, got {fmt!r}", field="output_format")
        return cls(sub, OscillatorParams(**raw_params), fmt, data.get("output_path"), options)


def _temperatures(opts) -> np.ndarray:
    if opts["t_steps"] < 1 or not 0 < opts["t_min"] <= opts["t_max"]:
        raise ConfigError("need 0 < t_min <= t_max and t_steps >= 1", field="t_min")
    return np.linspace(opts["t_min"], opts["t_max"], opts["t_steps"])


def _run_spectrum(cfg: RunConfig):
    opts = cfg.options
    if opts["n_max"] is not None:
        spec = spectrum_levels(opts["branch"], cfg.params, int(opts["n_max"]))
    else:
        spec = build_spectrum(opts["branch"], cfg.params, opts["e_cut"])
    n = list(range(spec.n_max + 1))
    columns = {"n": n, "E_n": spec.levels.tolist()}
    diag = {"branch": spec.branch.value, "n_max": spec.n_max, "e_cut": spec.e_cut}
    return columns, diag


def _run_partition(cfg: RunConfig):
    opts = cfg.options
    z_fn = partition_evaluator(cfg.params, opts["method"], opts["convention"], opts["variant"], opts["e_cut"])
    temps = _temperatures(opts)
    evs = [z_fn(float(t)) for t in temps]
    columns = {"T": temps.tolist(), "beta": [e.beta for e in evs], "Z": [e.z for e in evs]}
    return columns, {"method": Method(opts["method"]).value}


def _run_thermo(cfg: RunConfig):
    opts = cfg.options
    z_fn = partition_evaluator(cfg.params, opts["method"], opts["convention"], opts["variant"], opts["e_cut"])
    temps = _temperatures(opts)
    points = thermo_sweep(z_fn, temps)
    nan = float("nan")
    columns = {
        "T": temps.tolist(),
        "F": [p.f if p else nan for p in points],
        "U": [p.u if p else nan for p in points],
        "S": [p.s if p else nan for p in points],
        "C_V": [p.c_v if p else nan for p in points],
    }
    gaps = [float(t) for t, p in zip(temps, points) if p is None]
    return columns, {"method": Method(opts["method"]).value, "breakdown_temperatures": gaps}


def _run_oracle(cfg: RunConfig):
    opts = cfg.options
    report = compare_with_analytic(cfg.params, int(opts["grid_points"]), int(opts["levels"]), opts["p_cut"])
    columns = {
        "n": list(range(len(report["analytic"]))),
        "analytic": report["analytic"],
        "numeric": report["numeric"],
        "rel_err": report["rel_err"],
    }
    return columns, {"max_rel_err": report["max_rel_err"], "p_cut": report["p_cut"]}


def _run_wavefunction(cfg: RunConfig):
    opts = cfg.options
    grid = make_grid(cfg.params, int(opts["grid_points"]))
    state = normalize_ground_state(cfg.params, opts["branch"], grid)
    columns = {"p": grid.points.tolist(), "psi": state.samples().tolist()}
    diag = {
        "branch": Branch(opts["branch"]).value,
        "log_normalization": state.log_normalization,
        "annihilation_residual": annihilation_residual(cfg.params, opts["branch"], grid),
        "p_bound": p_bound(cfg.params),
    }
    return columns, diag


def _json_ready(x):
    if isinstance(x, float) and x != x:
        return None
    if isinstance(x, list):
        return [_json_ready(v) for v in x]
    if isinstance(x, dict):
        return {k: _json_ready(v) for k, v in x.items()}
    return x


def render(cfg: RunConfig, columns: dict, diagnostics: dict) -> str:
    if cfg.output_format == "json":
        results = dict(columns)
        if cfg.subcommand == "oracle":
            results["max_rel_err"] = diagnostics["max_rel_err"]
        doc = {"config": cfg.to_dict(), "results": results, "diagnostics": diagnostics}
        return json.dumps(_json_ready(doc), indent=2, allow_nan=False) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    names = list(columns)
    writer.writerow(names)
    for row in zip(*(columns[k] for k in names)):
        writer.writerow([v if isinstance(v, int) else format_float(v) for v in row])
    return buf.getvalue()


_RUNNERS = {
    "spectrum": _run_spectrum,
    "partition": _run_partition,
    "thermo": _run_thermo,
    "oracle": _run_oracle,
    "wavefunction": _run_wavefunction,
}


def run(cfg: RunConfig, stdout=None) -> int:
    """Execute one configured run; returns the process exit status."""
    stdout = stdout or sys.stdout
    if cfg.subcommand == "fig1":
        opts = cfg.options
        temps = _temperatures(opts)
        paths = emit_fig1_bundle(
            opts["outdir"],
            cfg.params.m,
            cfg.params.omega,
            tuple(opts["alphas"]),
            temps,
            Method(opts["method"]),
            Convention(opts["convention"]),
            Variant(opts["variant"]),
            bool(opts["svg"]),
        )
        stdout.write("".join(f"{p}\n" for p in paths))
        return 0
    columns, diagnostics = _RUNNERS[cfg.subcommand](cfg)
    text = render(cfg, columns, diagnostics)
    if cfg.output_path:
        Path(cfg.output_path).write_text(text)
    else:
        stdout.write(text)
    return 0


def _add_common(p: argparse.ArgumentParser):
    g = p.add_argument_group("oscillator parameters")
    g.add_argument("--m", type=float)
    g.add_argument("--omega", type=float)
    g.add_argument("--alpha", type=float)
    g.add_argument("--gamma", type=float)
    g.add_argument("--p-bound", dest="p_bound", type=float)
    p.add_argument("--format", dest="output_format", choices=("csv", "json"))
    p.add_argument("--output", dest="output_path")
    p.add_argument("--config", help="JSON run configuration; flags override it")


def _add_temperature_grid(p):
    p.add_argument("--method", choices=[m.value for m in Method])
    p.add_argument("--convention", choices=[c.value for c in Convention])
    p.add_argument("--variant", choices=[v.value for v in Variant])
    p.add_argument("--t-min", dest="t_min", type=float)
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--t-steps", dest="t_steps", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dirac-gup",
        description="Spectra and thermodynamics of the deformed 1+1 Dirac oscillator.",
    )
    parser.add_argument("--config", help="JSON run configuration (may name the subcommand)")
    sub = parser.add_subparsers(dest="subcommand")
    kw = {"argument_default": argparse.SUPPRESS}

    p = sub.add_parser("spectrum", help="energy levels of one branch", **kw)
    p.add_argument("--branch", choices=[b.value for b in Branch])
    p.add_argument("--n-max", dest="n_max", type=int)
    p.add_argument("--e-cut", dest="e_cut", type=float)
    _add_common(p)

    for name, help_ in (("partition", "partition function over a temperature grid"),
                        ("thermo", "F, U, S, C_V over a temperature grid")):
        p = sub.add_parser(name, help=help_, **kw)
        _add_temperature_grid(p)
        p.add_argument("--e-cut", dest="e_cut", type=float)
        _add_common(p)

    p = sub.add_parser("oracle", help="discretized b+b- eigenvalues vs the analytic spectrum", **kw)
    p.add_argument("--grid-points", dest="grid_points", type=int)
    p.add_argument("--levels", type=int)
    p.add_argument("--p-cut", dest="p_cut", type=float)
    _add_common(p)

    p = sub.add_parser("wavefunction", help="normalized ground state on the momentum grid", **kw)
    p.add_argument("--branch", choices=[b.value for b in Branch])
    p.add_argument("--grid-points", dest="grid_points", type=int)
    _add_common(p)

    p = sub.add_parser("fig1", help="CSV/SVG bundle of F/m, U/m, S, C_V versus T/m", **kw)
    p.add_argument("--outdir")
    p.add_argument("--alphas", type=float, nargs="+")
    _add_temperature_grid(p)
    p.add_argument("--no-svg", dest="svg", action="store_false")
    _add_common(p)
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    values = vars(ns).copy()
    data: dict = {}
    cfg_path = values.pop("config", None)
    if cfg_path:
        data = json.loads(Path(cfg_path).read_text())
    sub = values.pop("subcommand", None) or data.get("subcommand")
    if sub is None:
        raise ConfigError("no subcommand given", field="subcommand")
    if data.get("subcommand") not in (None, sub):
        data = {k: v for k, v in data.items() if k != "options"}
    data["subcommand"] = sub
    params = dict(data.get("params") or {})
    for name in PARAM_FIELDS:
        if name in values:
            params[name] = values.pop(name)
    data["params"] = params
    for key in ("output_format", "output_path"):
        if key in values:
            data[key] = values.pop(key)
    options = dict(data.get("options") or {})
    options.update(values)
    data["options"] = options
    return RunConfig.from_dict(data)


def _error_record(exc: Exception) -> str:
    rec = {"type": type(exc).__name__, "message": str(exc), "field": getattr(exc, "field", None)}
    if isinstance(exc, ConvergenceError):
        rec["diagnostics"] = exc.diagnostics
    return json.dumps({"error": rec}) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (ConfigError, ParameterDomainError, json.JSONDecodeError, OSError) as exc:
        sys.stderr.write(_error_record(exc))
        return 2
    try:
        return run(cfg)
    except (ParameterDomainError, ValueError, ConvergenceError, RuntimeError) as exc:
        sys.stderr.write(_error_record(exc))
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
