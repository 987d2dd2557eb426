"""Command-line front end: ``ginibre-rates <command> [options]``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, fields

import numpy as np

from .errors import ConvergenceError, DomainError, GinibreError, SchemeError, SizeError
from .laws import CdfKind, GumbelLaw, build_model, gap_prediction, rate_grid
from .rates import gap_scan, kappa_constants, rate_report
from .sampler import EntryLaw, SeedSpec, sample_extreme_eig, sample_radius_kostlan
from .scaling import Ensemble, Statistic, Variant, optimized_residual, scaling, unscale_statistic

COMMANDS = ("tabulate-cdf", "rates", "sample", "kappa", "solve-scaling", "gap-scan")
SCHEMA_VERSION = 1


class CliError(Exception):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class RunConfig:
    command: str
    n_list: list
    statistic: Statistic = Statistic.RADIUS
    ensemble: Ensemble = Ensemble.COMPLEX
    entry_law: EntryLaw | None = None
    model: CdfKind | None = None
    scheme: Variant = Variant.STANDARD
    seed: int = 0
    count: int = 1000
    workers: int = 1
    out: str | None = None
    format: str = "csv"
    route: str = "kostlan"

    def validate(self) -> "RunConfig":
        if self.command not in COMMANDS:
            raise CliError("command", f"unknown command {self.command!r}")
        if self.workers < 1:
            raise CliError("workers", "must be >= 1")
        if self.format not in ("csv", "json"):
            raise CliError("format", f"must be csv or json, got {self.format!r}")
        if self.count < 1:
            raise CliError("count", "must be >= 1")
        if self.route not in ("kostlan", "eig"):
            raise CliError("route", f"must be kostlan or eig, got {self.route!r}")
        needs_n = self.command in ("tabulate-cdf", "rates", "sample", "solve-scaling", "gap-scan")
        if needs_n and not self.n_list:
            raise CliError("n", "at least one matrix size is required")
        for n in self.n_list:
            if not (math.isfinite(n) and n > 0):
                raise CliError("n", f"must be positive, got {n!r}")
        if self.command == "rates" and len(set(self.n_list)) < 3:
            raise CliError("n_list", "rates needs at least 3 distinct n values")
        return self


def _parse_ensemble(text: str):
    if text.startswith("iid:"):
        name = text[4:]
        try:
            return Ensemble.IID, EntryLaw(name)
        except ValueError:
            choices = ", ".join(e.value for e in EntryLaw if e.is_complex)
            raise CliError("ensemble", f"unknown entry law {name!r} (choose from {choices})") from None
    try:
        return Ensemble(text), None
    except ValueError:
        raise CliError("ensemble", f"must be real, complex or iid:<law>, got {text!r}") from None


def _parse_n(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise CliError("n", f"not a number: {text!r}") from None
    return v


def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return "%.17g" % float(x)


def _default_workers() -> int:
    return len(os.sched_getaffinity(0)) if hasattr(os, "sched_getaffinity") else (os.cpu_count() or 1)


def _enum(cls, field_name, value):
    try:
        return cls(value)
    except ValueError:
        choices = ", ".join(e.value for e in cls)
        raise CliError(field_name, f"must be one of {choices}, got {value!r}") from None


_CONFIG_KEYS = {f.name for f in fields(RunConfig)} - {"command"} | {"n"}


def _load_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise CliError("config", f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise CliError("config", f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise CliError("config", "top level must be an object")
    unknown = sorted(set(data) - _CONFIG_KEYS)
    if unknown:
        raise CliError(unknown[0], "unknown configuration key")
    return data


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ginibre-rates",
        description="Extreme eigenvalue laws of Ginibre matrices and their rates of convergence to Gumbel.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, *, n=True, model=False, sampling=False, output=True):
        if n:
            p.add_argument("--n", type=str, help="matrix size")
            p.add_argument("--n-list", type=str, help="comma-separated matrix sizes")
        p.add_argument("--statistic", choices=[s.value for s in Statistic])
        p.add_argument("--ensemble", help="real | complex | iid:<law>")
        p.add_argument("--scheme", choices=[v.value for v in Variant])
        if model:
            p.add_argument("--model", choices=[k.value for k in CdfKind])
        if sampling:
            p.add_argument("--seed", type=int)
            p.add_argument("--count", type=int)
        p.add_argument("--workers", type=int, help="worker processes (GINIBRE_THREADS overrides)")
        if output:
            p.add_argument("--out", help="output file (default stdout)")
            p.add_argument("--format", choices=["csv", "json"])
        p.add_argument("--config", help="JSON file with any of the options above")

    common(sub.add_parser("tabulate-cdf", help="model and Gumbel CDFs over the rate grid"), model=True, sampling=True)
    common(sub.add_parser("rates", help="sup and W1 distances over n, with fitted constants"), model=True)
    p = sub.add_parser("sample", help="Monte Carlo samples of the raw statistic")
    common(p, sampling=True)
    p.add_argument("--route", choices=["kostlan", "eig"])
    sub.add_parser("kappa", help="the constants kappa1 and kappa2")
    common(sub.add_parser("solve-scaling", help="scaling constant for n"), output=False)
    common(sub.add_parser("gap-scan", help="measured gap against its leading-order prediction"), model=True)
    return parser


def make_config(args: argparse.Namespace, environ=os.environ) -> RunConfig:
    values = {}
    if getattr(args, "config", None):
        values.update(_load_config(args.config))
    for key in ("statistic", "ensemble", "scheme", "model", "seed", "count", "workers", "out", "format", "route"):
        v = getattr(args, key, None)
        if v is not None:
            values[key] = v
    n_items = []
    if "n" in values:
        n_items.append(values.pop("n"))
    if "n_list" in values:
        raw = values.pop("n_list")
        n_items.extend(raw if isinstance(raw, list) else str(raw).split(","))
    if getattr(args, "n", None) is not None or getattr(args, "n_list", None) is not None:
        n_items = []
        if getattr(args, "n", None) is not None:
            n_items.append(args.n)
        if getattr(args, "n_list", None) is not None:
            n_items.extend(args.n_list.split(","))
    n_list = [_parse_n(str(x).strip()) for x in n_items if str(x).strip()]

    ensemble, law = _parse_ensemble(str(values.get("ensemble", "complex")))
    workers = values.get("workers", _default_workers())
    env = environ.get("GINIBRE_THREADS")
    if env is not None:
        try:
            workers = int(env)
        except ValueError:
            raise CliError("GINIBRE_THREADS", f"not an integer: {env!r}") from None
    cfg = RunConfig(
        command=args.command,
        n_list=n_list,
        statistic=_enum(Statistic, "statistic", values.get("statistic", "radius")),
        ensemble=ensemble,
        entry_law=law,
        model=_enum(CdfKind, "model", values["model"]) if values.get("model") is not None else None,
        scheme=_enum(Variant, "scheme", values.get("scheme", "standard")),
        seed=int(values.get("seed", 0)),
        count=int(values.get("count", 1000)),
        workers=int(workers),
        out=values.get("out"),
        format=str(values.get("format", "csv")),
        route=str(values.get("route", "kostlan")),
    )
    return cfg.validate()


def _single_n(cfg: RunConfig) -> float:
    if len(cfg.n_list) != 1:
        raise CliError("n", f"{cfg.command} takes exactly one n")
    return cfg.n_list[0]


def _write(cfg: RunConfig, text: str) -> None:
    if cfg.out is None:
        sys.stdout.write(text)
        return
    try:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError("out", f"cannot write {cfg.out}: {exc.strerror}") from None


def _csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def _model_kind(cfg: RunConfig) -> CdfKind:
    if cfg.model is not None:
        return cfg.model
    if cfg.statistic is Statistic.RADIUS and cfg.ensemble is Ensemble.COMPLEX:
        return CdfKind.KOSTLAN_EXACT
    return CdfKind.EXP_NEG_TRACE


def _analytic_ensemble(cfg: RunConfig) -> Ensemble:
    # analytic models of an i.i.d. ensemble are those of the complex Ginibre limit
    return Ensemble.COMPLEX if cfg.ensemble is Ensemble.IID else cfg.ensemble


def cmd_tabulate_cdf(cfg: RunConfig) -> str:
    n = _single_n(cfg)
    kind = _model_kind(cfg)
    ens = _analytic_ensemble(cfg)
    ecdf = None
    if kind is CdfKind.EMPIRICAL_MC:
        exact = cfg.statistic is Statistic.RADIUS and cfg.ensemble is Ensemble.COMPLEX
        ecdf = _sample(cfg, n, "kostlan" if exact else "eig")
    try:
        model = build_model(kind, n, cfg.statistic, ens, cfg.scheme, ecdf=ecdf)
    except GinibreError as exc:
        raise CliError("model", str(exc)) from None
    grid = rate_grid(n)
    t = grid.scan_nodes()
    fm = model.cdf(t)
    fg = GumbelLaw(ens.beta).cdf(t)
    pred = gap_prediction(n, t, cfg.statistic, ens, model.scheme)
    raw = unscale_statistic(t, model.scheme)
    rows = list(zip(t, raw, fm, fg, np.abs(fm - fg), pred))
    header = ["t", "raw", "F_model", "F_gumbel", "gap", "prediction"]
    if cfg.format == "json":
        return _json({
            "schema_version": SCHEMA_VERSION,
            "command": "tabulate-cdf",
            "n": n,
            "statistic": cfg.statistic.value,
            "ensemble": ens.value,
            "scheme": cfg.scheme.value,
            "model": kind.value,
            "rows": [dict(zip(header, map(float, r))) for r in rows],
        })
    return _csv(header, rows)


def cmd_rates(cfg: RunConfig) -> str:
    kind = _model_kind(cfg)
    report = rate_report(cfg.n_list, cfg.statistic, _analytic_ensemble(cfg), cfg.scheme, kind, workers=cfg.workers)
    if cfg.format == "json":
        d = report.to_dict()
        d["schema_version"] = SCHEMA_VERSION
        d["command"] = "rates"
        return _json(d)
    header = ["n", "sup_distance", "argmax_t", "w1_distance", "prediction_sup", "prediction_w1"]
    rows = [(r.n, r.sup_distance, r.argmax_t, r.w1_distance, r.prediction_sup, r.prediction_w1) for r in report.records]
    text = _csv(header, rows)
    nan = float("nan")
    fit = [
        ("sup", report.c_sup, report.target_sup if report.target_sup is not None else nan),
        ("w1", report.c_w1, report.target_w1 if report.target_w1 is not None else nan),
    ]
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["metric", "fitted_c", "target_c"])
    for name, c, tgt in fit:
        w.writerow([name, _fmt(c), _fmt(tgt)])
    return text + "\n" + buf.getvalue()


def _sample(cfg: RunConfig, n: float, route: str):
    if n != int(n):
        raise CliError("n", "sampling needs an integer n")
    seed = SeedSpec(cfg.seed)
    if route == "kostlan":
        if cfg.statistic is not Statistic.RADIUS or cfg.ensemble is not Ensemble.COMPLEX:
            raise CliError("route", "the Kostlan route samples the complex spectral radius only")
        return sample_radius_kostlan(int(n), cfg.count, seed, workers=cfg.workers)
    return sample_extreme_eig(int(n), cfg.count, cfg.ensemble, cfg.statistic, cfg.entry_law, seed, workers=cfg.workers)


def cmd_sample(cfg: RunConfig) -> str:
    n = _single_n(cfg)
    ecdf = _sample(cfg, n, cfg.route)
    header = f"# {cfg.route} n={int(n)} seed={cfg.seed} count={ecdf.count}\n"
    if cfg.format == "json":
        return _json({
            "schema_version": SCHEMA_VERSION,
            "command": "sample",
            "route": cfg.route,
            "n": int(n),
            "seed": cfg.seed,
            "count": ecdf.count,
            "values": [float(v) for v in ecdf.values],
        })
    return header + "".join(f"{v:.17g}\n" for v in ecdf.values)


def cmd_kappa() -> str:
    k1, t1, k2, t2 = kappa_constants()
    return f"kappa1={k1:.17g}\nkappa2={k2:.17g}\n"


def cmd_solve_scaling(cfg: RunConfig) -> str:
    lines = []
    for n in cfg.n_list:
        try:
            s = scaling(n, cfg.statistic, cfg.scheme)
        except GinibreError as exc:
            raise CliError("n", str(exc)) from None
        line = f"n={n:.17g} statistic={cfg.statistic.value} scheme={cfg.scheme.value} gamma={s.gamma:.17g}"
        if cfg.scheme is Variant.OPTIMIZED:
            line += f" residual={optimized_residual(s):.3g}"
        lines.append(line)
    return "\n".join(lines) + "\n"


def cmd_gap_scan(cfg: RunConfig) -> str:
    n = _single_n(cfg)
    ens = _analytic_ensemble(cfg)
    scan = gap_scan(n, cfg.statistic, ens, cfg.scheme, _model_kind(cfg))
    ratio = scan.measured / scan.predicted
    header = ["t", "measured", "predicted", "ratio"]
    rows = list(zip(scan.t, scan.measured, scan.predicted, ratio))
    if cfg.format == "json":
        return _json({
            "schema_version": SCHEMA_VERSION,
            "command": "gap-scan",
            "n": n,
            "statistic": cfg.statistic.value,
            "ensemble": ens.value,
            "scheme": cfg.scheme.value,
            "interval": [scan.lo, scan.hi],
            "max_ratio": scan.max_ratio,
            "rows": [dict(zip(header, map(float, r))) for r in rows],
        })
    return _csv(header, rows)


_ERROR_FIELDS = {SchemeError: "scheme", SizeError: "n", DomainError: "n", ConvergenceError: "n"}


def run(argv=None, environ=os.environ) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "kappa":
            sys.stdout.write(cmd_kappa())
            return 0
        cfg = make_config(args, environ)
        handler = {
            "tabulate-cdf": cmd_tabulate_cdf,
            "rates": cmd_rates,
            "sample": cmd_sample,
            "solve-scaling": cmd_solve_scaling,
            "gap-scan": cmd_gap_scan,
        }[cfg.command]
        text = handler(cfg)
        if cfg.command == "solve-scaling":
            sys.stdout.write(text)
        else:
            _write(cfg, text)
    except CliError as exc:
        print(f"ginibre-rates: error: {exc}", file=sys.stderr)
        return 2
    except GinibreError as exc:
        print(f"ginibre-rates: error: {_ERROR_FIELDS.get(type(exc), 'n')}: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
