"""Command-line front end.

Subcommands: enumerate, verify, sample, crossing-prob, strip-density,
push-probe, phase-scan, annulus-volumes. Every run writes a JSON report that
embeds the fully resolved configuration and an engine version hash; tabular
results go to a CSV with the frozen column schema

    run_id, command, n, x, h, h_prime, bc, domain, size, rho,
    estimate, std_error, flag

Outputs carry no timestamps, so a rerun with the same configuration and
engine produces byte-identical files. Exit codes: 0 success, 1 completed
with failure flags (non-convergence, failed check, degenerate probes),
2 configuration error.

Option precedence: command-line flags beat the ``--config`` JSON document
(a flat object keyed by option name with underscores), which beats built-in
defaults. ``HEXCROSS_THREADS`` sets worker parallelism when no explicit
worker count is given.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import sys
from pathlib import Path
from typing import Optional

from . import exact, hexlat
from .crossing import (CrossingEvent, canonical_increasing_events,
                       center_to_boundary, connectivity_event, face_event,
                       horizontal_crossing, vertical_blocking,
                       vertical_crossing)
from .density import (annulus_volume_tail, classify_phase, push_disjunction,
                      push_probe, strip_density)
from .errors import ConfigurationError, EnumerationCapError
from .hexlat import HexDomain
from .model import BoundaryCondition, ModelParams
from .sampler import Estimate, Schedule, estimate_event

CSV_COLUMNS = ("run_id", "command", "n", "x", "h", "h_prime", "bc",
               "domain", "size", "rho", "estimate", "std_error", "flag")

_SCHEDULE_DEFAULTS = {"burn_in": 500, "sweeps": 2000, "thin": 1,
                      "chains": 3, "seed": 0, "algorithm": "auto",
                      "workers": None}


def engine_version() -> str:
    """Hash of the package sources; stamps every output document."""
    digest = hashlib.sha256()
    for path in sorted(Path(__file__).parent.glob("*.py")):
        digest.update(path.name.encode())
        digest.update(path.read_bytes())
    return digest.hexdigest()[:12]


def parse_domain(text: str) -> HexDomain:
    """Build a domain from a spec string: hexagon:SIDE, box:WxH, strip:WxL,
    or annulus:SIDExDELTA."""
    try:
        kind, _, arg = text.partition(":")
        if kind == "hexagon":
            return hexlat.build_regular_hexagon(int(arg))
        if kind == "box":
            w, h = arg.split("x")
            return hexlat.build_hex_box(int(w), int(h))
        if kind == "strip":
            w, l = arg.split("x")
            return hexlat.build_strip(int(w), int(l))
        if kind == "annulus":
            s, d = arg.split("x")
            return hexlat.build_annulus(int(s), int(d))
    except (ValueError, TypeError) as err:
        raise ConfigurationError(f"bad domain spec {text!r}: {err}") from err
    raise ConfigurationError(
        f"unknown domain kind {kind!r} (hexagon|box|strip|annulus)")


def parse_bc(text: str) -> BoundaryCondition:
    """free, wired, dobrushin:START-END, or mixed:Arc=SIGN,Arc=SIGN,..."""
    kind, _, arg = text.partition(":")
    if kind == "free":
        return BoundaryCondition.free()
    if kind == "wired":
        return BoundaryCondition.wired()
    if kind == "dobrushin":
        try:
            start, end = arg.split("-")
            return BoundaryCondition.dobrushin(int(start), int(end))
        except ValueError as err:
            raise ConfigurationError(
                f"bad dobrushin window {arg!r} (want START-END)") from err
    if kind == "mixed":
        try:
            signs = {}
            for part in arg.split(","):
                name, value = part.split("=")
                signs[name] = int(value)
            return BoundaryCondition.mixed(signs)
        except (ValueError, TypeError) as err:
            raise ConfigurationError(
                f"bad mixed arcs {arg!r} (want Arc=1,Arc=-1,...)") from err
    raise ConfigurationError(
        f"unknown boundary condition {text!r} "
        "(free|wired|dobrushin:a-b|mixed:Arc=s,...)")


def parse_event(text: str, domain: HexDomain, spin: int = 1):
    """horizontal, vertical, vertical-blocking, center-boundary,
    face:Q,R, or connect:Q,R:Q,R."""
    kind, _, arg = text.partition(":")
    if kind == "horizontal":
        return horizontal_crossing(domain, spin)
    if kind == "vertical":
        return vertical_crossing(domain, spin)
    if kind == "vertical-blocking":
        return vertical_blocking(domain)
    if kind == "center-boundary":
        return center_to_boundary(domain, spin)
    if kind == "face":
        try:
            q, r = (int(v) for v in arg.split(","))
        except ValueError as err:
            raise ConfigurationError(f"bad face {arg!r}") from err
        return face_event(domain, hexlat.Face(q, r), spin)
    if kind == "connect":
        try:
            a_txt, b_txt = arg.split(":")
            a = hexlat.Face(*(int(v) for v in a_txt.split(",")))
            b = hexlat.Face(*(int(v) for v in b_txt.split(",")))
        except ValueError as err:
            raise ConfigurationError(f"bad face pair {arg!r}") from err
        return connectivity_event(domain, a, b, spin)
    raise ConfigurationError(f"unknown event {text!r}")


# -- config resolution -------------------------------------------------------------

def _resolve(args: argparse.Namespace, defaults: dict) -> dict:
    """flags > config file > defaults; returns the full resolved mapping."""
    file_cfg = {}
    if getattr(args, "config", None):
        try:
            file_cfg = json.loads(Path(args.config).read_text())
        except (OSError, json.JSONDecodeError) as err:
            raise ConfigurationError(
                f"cannot read config file {args.config!r}: {err}") from err
        if not isinstance(file_cfg, dict):
            raise ConfigurationError("config file must hold a JSON object")
    resolved = {}
    for key, default in defaults.items():
        flag = getattr(args, key, None)
        if flag is not None:
            resolved[key] = flag
        elif key in file_cfg:
            resolved[key] = file_cfg[key]
        else:
            resolved[key] = default
    return resolved


def _params(cfg: dict) -> ModelParams:
    return ModelParams(float(cfg["n"]), float(cfg["x"]), float(cfg["h"]),
                       float(cfg["h_prime"]))


def _schedule(cfg: dict) -> Schedule:
    return Schedule(burn_in=int(cfg["burn_in"]), sweeps=int(cfg["sweeps"]),
                    thin=int(cfg["thin"]), chains=int(cfg["chains"]),
                    seed=int(cfg["seed"]), algorithm=cfg["algorithm"],
                    workers=(None if cfg["workers"] is None
                             else int(cfg["workers"])))


def _int_list(value) -> list:
    if isinstance(value, str):
        return [int(v) for v in value.split(",") if v]
    return [int(v) for v in value]


def run_id_for(core: dict) -> str:
    """Identity of the computation: hash of the canonical config JSON,
    excluding output plumbing so the same computation in a different
    directory keeps its id."""
    blob = json.dumps(core, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:12]


def _core_config(cfg: dict) -> dict:
    drop = {"output_dir", "format", "no_plot", "config", "workers"}
    return {k: v for k, v in cfg.items() if k not in drop}


# -- output writing ----------------------------------------------------------------

def _json_default(obj):
    if isinstance(obj, Estimate):
        return obj.to_json_dict()
    if hasattr(obj, "to_json_dict"):
        return obj.to_json_dict()
    if isinstance(obj, float) and (math.isnan(obj) or math.isinf(obj)):
        return repr(obj)
    if isinstance(obj, frozenset):
        return sorted(obj)
    raise TypeError(f"not JSON serializable: {type(obj)!r}")


def _fmt_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        if math.isinf(value) or math.isnan(value):
            return repr(value)
        return repr(value)
    return str(value)


def _emit(command: str, cfg: dict, report: dict, rows: list,
          out_dir: Path) -> list:
    """Write the JSON document (always) and the CSV table (unless
    format=json); returns the written paths."""
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    doc = {"command": command, "config": cfg, "run_id": report["run_id"],
           "engine_version": engine_version(), "report": report}
    json_path = out_dir / f"{command}.json"
    json_path.write_text(json.dumps(doc, sort_keys=True, indent=2,
                                    default=_json_default) + "\n")
    written.append(str(json_path))
    if cfg.get("format", "csv") != "json" and rows is not None:
        csv_path = out_dir / f"{command}.csv"
        with csv_path.open("w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_COLUMNS)
            for row in rows:
                writer.writerow([_fmt_cell(row.get(c)) for c in CSV_COLUMNS])
        written.append(str(csv_path))
    return written


def _base_row(run_id: str, command: str, cfg: dict) -> dict:
    return {"run_id": run_id, "command": command, "n": cfg.get("n"),
            "x": cfg.get("x"), "h": cfg.get("h"),
            "h_prime": cfg.get("h_prime"), "bc": cfg.get("bc"),
            "domain": cfg.get("domain"), "size": None, "rho": None,
            "estimate": None, "std_error": None, "flag": ""}


def _estimate_row(base: dict, est: Estimate, **over) -> dict:
    row = dict(base)
    row.update({"estimate": est.mean, "std_error": est.std_error,
                "flag": ";".join(est.flags)})
    row.update(over)
    return row


def _failure_flags(flags) -> bool:
    return any(f.startswith("non-converged") or f == "chain-disagreement"
               for f in flags)


# -- subcommand handlers ------------------------------------------------------------

_MODEL_DEFAULTS = {"n": 1.0, "x": 0.5, "h": 0.0, "h_prime": 0.0}


def _cmd_enumerate(args) -> int:
    defaults = {**_MODEL_DEFAULTS, "domain": "hexagon:1", "bc": "free",
                "cap": None, "workers": None,
                "output_dir": ".", "format": "csv"}
    cfg = _resolve(args, defaults)
    domain = parse_domain(cfg["domain"])
    bc = parse_bc(cfg["bc"])
    params = _params(cfg)
    tables = exact.enumerate_stats(domain, bc, cap=cfg["cap"],
                                   workers=cfg["workers"])
    log_z = exact.partition_function_log(domain, params, bc, cap=cfg["cap"])
    run_id = run_id_for(_core_config(cfg))
    report = {"run_id": run_id, "log_z": log_z,
              "n_faces": domain.n_faces, "n_configs": len(tables.e),
              "domain_kind": domain.kind}
    row = _base_row(run_id, "enumerate", cfg)
    row.update({"size": domain.n_faces, "estimate": log_z,
                "std_error": 0.0})
    _emit("enumerate", cfg, report, [row], Path(cfg["output_dir"]))
    return 0


_CHECKS = ("fkg", "cbc", "cbc-factor", "smp", "complementarity",
           "arm-union-bound")


def _cmd_verify(args) -> int:
    defaults = {**_MODEL_DEFAULTS, "check": "fkg", "domain": "hexagon:1",
                "bc": "free", "events": "horizontal,vertical",
                "bc_low": "free", "bc_high": "wired", "inner": None,
                "side": 1, "delta_prime": 1, "cells": 1, "spin": 1,
                "cap": None, "output_dir": ".", "format": "csv"}
    cfg = _resolve(args, defaults)
    params = _params(cfg)
    check = cfg["check"]
    if check not in _CHECKS:
        raise ConfigurationError(
            f"unknown check {check!r} (one of {', '.join(_CHECKS)})")
    run_id = run_id_for(_core_config(cfg))
    report: dict = {"run_id": run_id, "check": check,
                    "params": {"n": params.n, "x": params.x, "h": params.h,
                               "h_prime": params.h_prime}}
    domain = parse_domain(cfg["domain"])
    report["domain"] = cfg["domain"]
    spin = int(cfg["spin"])

    if check == "fkg":
        names = [e.strip() for e in str(cfg["events"]).split(",")]
        if len(names) != 2:
            raise ConfigurationError("fkg needs exactly two events")
        a = parse_event(names[0], domain, spin)
        b = parse_event(names[1], domain, spin)
        value = exact.check_fkg(domain, params, parse_bc(cfg["bc"]), a, b,
                                cap=cfg["cap"])
        report.update({"margin": float(value), "pass": value >= -1e-12,
                       "regime_supported": value.regime_supported,
                       "details": value.details})
    elif check in ("cbc", "cbc-factor"):
        event = parse_event(str(cfg["events"]).split(",")[0].strip(),
                            domain, spin)
        low, high = parse_bc(cfg["bc_low"]), parse_bc(cfg["bc_high"])
        fn = exact.check_cbc if check == "cbc" else exact.check_cbc_factor
        value = fn(domain, params, event, low, high, cap=cfg["cap"])
        report.update({"margin": float(value), "pass": value >= -1e-12,
                       "regime_supported": value.regime_supported,
                       "details": value.details})
    elif check == "smp":
        if not cfg["inner"]:
            raise ConfigurationError("smp needs --inner DOMAIN")
        inner = parse_domain(cfg["inner"])
        event = parse_event(str(cfg["events"]).split(",")[0].strip(),
                            inner, spin)
        value = exact.check_smp(inner, domain, params,
                                parse_bc(cfg["bc"]), event, cap=cfg["cap"])
        report.update({"deviation": float(value),
                       "pass": (abs(value) <= 1e-10
                                if value.regime_supported else True),
                       "regime_supported": value.regime_supported,
                       "details": value.details})
    elif check == "complementarity":
        value = exact.check_complementarity(domain, params,
                                            parse_bc(cfg["bc"]),
                                            cap=cfg["cap"])
        report.update({"deviation": float(value),
                       "pass": abs(value) <= 1e-10,
                       "regime_supported": value.regime_supported,
                       "details": value.details})
    else:
        result = exact.check_arm_union_bound(int(cfg["side"]),
                                             int(cfg["delta_prime"]),
                                             int(cfg["cells"]), params,
                                             cap=cfg["cap"])
        report.update(result)
        report["pass"] = result["pass"]

    base = _base_row(run_id, "verify", cfg)
    base.update({"estimate": report.get("margin",
                                        report.get("deviation")),
                 "std_error": 0.0,
                 "flag": "" if report["pass"] else "failed"})
    _emit("verify", cfg, report, [base], Path(cfg["output_dir"]))
    return 0 if report["pass"] else 1


def _cmd_sample(args) -> int:
    defaults = {**_MODEL_DEFAULTS, **_SCHEDULE_DEFAULTS,
                "domain": "hexagon:1", "bc": "free", "event": "horizontal",
                "spin": 1, "output_dir": ".", "format": "csv"}
    cfg = _resolve(args, defaults)
    domain = parse_domain(cfg["domain"])
    event = parse_event(cfg["event"], domain, int(cfg["spin"]))
    est = estimate_event(domain, _params(cfg), parse_bc(cfg["bc"]), event,
                         _schedule(cfg))
    run_id = run_id_for(_core_config(cfg))
    report = {"run_id": run_id, "event": cfg["event"],
              "estimate": est.to_json_dict()}
    row = _estimate_row(_base_row(run_id, "sample", cfg), est,
                        size=domain.n_faces)
    _emit("sample", cfg, report, [row], Path(cfg["output_dir"]))
    return 0 if est.converged else 1


def _cmd_crossing_prob(args) -> int:
    defaults = {**_MODEL_DEFAULTS, **_SCHEDULE_DEFAULTS,
                "domain": "box:3x3", "bc": "free", "event": "horizontal",
                "spin": 1, "cap": None, "output_dir": ".", "format": "csv"}
    cfg = _resolve(args, defaults)
    domain = parse_domain(cfg["domain"])
    event = parse_event(cfg["event"], domain, int(cfg["spin"]))
    params, bc = _params(cfg), parse_bc(cfg["bc"])
    cap = exact.DEFAULT_CAP if cfg["cap"] is None else int(cfg["cap"])
    if domain.n_faces <= cap:
        p = exact.event_probability(domain, params, bc, event, cap=cap)
        est = Estimate(mean=p, std_error=0.0,
                       n_samples=1 << domain.n_faces,
                       autocorrelation_time=0.0, seeds=[], converged=True,
                       flags=["exact"])
    else:
        est = estimate_event(domain, params, bc, event, _schedule(cfg))
    run_id = run_id_for(_core_config(cfg))
    report = {"run_id": run_id, "event": cfg["event"],
              "estimate": est.to_json_dict(),
              "method": "exact" if "exact" in est.flags else "mcmc"}
    row = _estimate_row(_base_row(run_id, "crossing-prob", cfg), est,
                        size=domain.n_faces)
    _emit("crossing-prob", cfg, report, [row], Path(cfg["output_dir"]))
    return 0 if est.converged else 1


def _cmd_strip_density(args) -> int:
    defaults = {**_MODEL_DEFAULTS, **_SCHEDULE_DEFAULTS, "width": 1,
                "stretch": 1, "bc_mode": "free_horizontal",
                "rhos": "2,4,6,8", "lam": 2, "height": None, "cap": None,
                "no_plot": False, "output_dir": ".", "format": "csv"}
    cfg = _resolve(args, defaults)
    curve = strip_density(_params(cfg), int(cfg["width"]),
                          int(cfg["stretch"]), cfg["bc_mode"],
                          _int_list(cfg["rhos"]), _schedule(cfg),
                          lam=int(cfg["lam"]),
                          height=(None if cfg["height"] is None
                                  else int(cfg["height"])),
                          cap=cfg["cap"])
    run_id = run_id_for(_core_config(cfg))
    report = {"run_id": run_id, "curve": curve.to_json_dict()}
    bc_name = ("free" if cfg["bc_mode"] == "free_horizontal" else "wired")
    base = _base_row(run_id, "strip-density", cfg)
    base["bc"] = bc_name
    rows = [_estimate_row(base, est, rho=rho,
                          size=rho * int(cfg["width"]))
            for rho, est in zip(curve.rho_values, curve.raw_probs)]
    out_dir = Path(cfg["output_dir"])
    written = _emit("strip-density", cfg, report, rows, out_dir)
    if not cfg["no_plot"]:
        from . import plots
        written.append(plots.plot_density_curve(
            curve, str(out_dir / "strip-density.png")))
    return 1 if _failure_flags(curve.flags) else 0


def _cmd_push_probe(args) -> int:
    defaults = {**_MODEL_DEFAULTS, **_SCHEDULE_DEFAULTS, "which": "both",
                "width": 1, "stretch": 1, "lam": 2, "rhos": "2,4,8",
                "cap": None, "no_plot": False, "output_dir": ".",
                "format": "csv"}
    cfg = _resolve(args, defaults)
    params, sched = _params(cfg), _schedule(cfg)
    rhos = _int_list(cfg["rhos"])
    kw = dict(width=int(cfg["width"]), stretch=int(cfg["stretch"]),
              lam=int(cfg["lam"]), cap=cfg["cap"])
    if cfg["which"] == "both":
        report_body = push_disjunction(params, rhos, sched, **kw)
        probes = [report_body["primal"], report_body["dual"]]
        failed = not report_body["disjunction_holds"]
        flags = (report_body["primal"]["flags"]
                 + report_body["dual"]["flags"] + report_body["flags"])
    else:
        probe = push_probe(params, cfg["which"], rhos, sched, **kw)
        report_body, probes = probe, [probe]
        failed = not probe["positive"]
        flags = probe["flags"]
    run_id = run_id_for(_core_config(cfg))
    report = {"run_id": run_id, **_strip_estimates(report_body)}
    rows = []
    for probe in probes:
        base = _base_row(run_id, "push-probe", cfg)
        base["bc"] = ("mixed" if "primal" in probe["which"].lower()
                      else "mixed-primed")
        for rho, est in zip(probe["rho_values"], probe["estimates"]):
            rows.append(_estimate_row(base, est, rho=rho,
                                      size=rho * int(cfg["width"])))
    out_dir = Path(cfg["output_dir"])
    written = _emit("push-probe", cfg, report, rows, out_dir)
    if not cfg["no_plot"]:
        from . import plots
        written.append(plots.plot_push_probe(
            report_body, str(out_dir / "push-probe.png")))
    return 1 if failed or _failure_flags(flags) else 0


def _strip_estimates(body):
    """Deep-copy a report replacing Estimate objects with JSON dicts."""
    if isinstance(body, Estimate):
        return body.to_json_dict()
    if isinstance(body, dict):
        return {k: _strip_estimates(v) for k, v in body.items()}
    if isinstance(body, (list, tuple)):
        return [_strip_estimates(v) for v in body]
    return body


def _cmd_phase_scan(args) -> int:
    defaults = {**_MODEL_DEFAULTS, **_SCHEDULE_DEFAULTS,
                "sizes": "6,9,12,18", "cap": None, "no_plot": False,
                "output_dir": ".", "format": "csv"}
    cfg = _resolve(args, defaults)
    verdict = classify_phase(_params(cfg), _int_list(cfg["sizes"]),
                             _schedule(cfg), cap=cfg["cap"])
    run_id = run_id_for(_core_config(cfg))
    report = {"run_id": run_id, "verdict": verdict.to_json_dict()}
    rows = []
    for bc_name, series in (("wired", verdict.wired_series),
                            ("free", verdict.free_series)):
        base = _base_row(run_id, "phase-scan", cfg)
        base["bc"] = bc_name
        rows.extend(_estimate_row(base, est, size=size)
                    for size, est in zip(verdict.sizes, series))
    out_dir = Path(cfg["output_dir"])
    written = _emit("phase-scan", cfg, report, rows, out_dir)
    if not cfg["no_plot"]:
        from . import plots
        written.append(plots.plot_phase_scan(
            verdict, str(out_dir / "phase-scan.png")))
    return 1 if _failure_flags(verdict.flags) else 0


def _cmd_annulus_volumes(args) -> int:
    defaults = {**_MODEL_DEFAULTS, **_SCHEDULE_DEFAULTS, "side": 2,
                "delta": 2, "bc": "free", "spin": 1, "ambient": None,
                "no_plot": False, "output_dir": ".", "format": "csv"}
    cfg = _resolve(args, defaults)
    ambient = parse_domain(cfg["ambient"]) if cfg["ambient"] else None
    report_body = annulus_volume_tail(_params(cfg), int(cfg["side"]),
                                      int(cfg["delta"]), _schedule(cfg),
                                      bc=parse_bc(cfg["bc"]),
                                      spin=int(cfg["spin"]), domain=ambient)
    run_id = run_id_for(_core_config(cfg))
    report = {"run_id": run_id, **_strip_estimates(report_body)}
    base = _base_row(run_id, "annulus-volumes", cfg)
    base["domain"] = f"annulus:{cfg['side']}x{cfg['delta']}"
    rows = []
    for n, s in report_body["survival"]:
        row = dict(base)
        row.update({"size": n, "estimate": s, "std_error": None,
                    "flag": ";".join(report_body["flags"])})
        rows.append(row)
    out_dir = Path(cfg["output_dir"])
    written = _emit("annulus-volumes", cfg, report, rows, out_dir)
    if not cfg["no_plot"]:
        from . import plots
        written.append(plots.plot_annulus_tail(
            report_body, str(out_dir / "annulus-volumes.png")))
    return 1 if _failure_flags(report_body["flags"]) else 0


# -- parser -----------------------------------------------------------------------

def _add_common(sub, schedule: bool = False, model: bool = True) -> None:
    sub.add_argument("--config", help="flat JSON config file")
    sub.add_argument("--output-dir", dest="output_dir")
    sub.add_argument("--format", choices=("csv", "json"))
    if model:
        sub.add_argument("--n", type=float)
        sub.add_argument("--x", type=float)
        sub.add_argument("--h", type=float)
        sub.add_argument("--h-prime", dest="h_prime", type=float)
    if schedule:
        sub.add_argument("--burn-in", dest="burn_in", type=int)
        sub.add_argument("--sweeps", type=int)
        sub.add_argument("--thin", type=int)
        sub.add_argument("--chains", type=int)
        sub.add_argument("--seed", type=int)
        sub.add_argument("--algorithm",
                         choices=("auto", "heatbath", "wolff"))
        sub.add_argument("--workers", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hexcross",
        description=("Hexagonal-lattice spin/loop simulation and "
                     "verification toolkit"))
    subs = parser.add_subparsers(dest="subcommand", required=True)

    p = subs.add_parser("enumerate", help="exact partition function")
    _add_common(p)
    p.add_argument("--domain")
    p.add_argument("--bc")
    p.add_argument("--cap", type=int)
    p.add_argument("--workers", type=int)
    p.set_defaults(handler=_cmd_enumerate)

    p = subs.add_parser("verify", help="exact inequality checks")
    _add_common(p)
    p.add_argument("--check", choices=_CHECKS)
    p.add_argument("--domain")
    p.add_argument("--bc")
    p.add_argument("--events")
    p.add_argument("--bc-low", dest="bc_low")
    p.add_argument("--bc-high", dest="bc_high")
    p.add_argument("--inner")
    p.add_argument("--side", type=int)
    p.add_argument("--delta-prime", dest="delta_prime", type=int)
    p.add_argument("--cells", type=int)
    p.add_argument("--spin", type=int)
    p.add_argument("--cap", type=int)
    p.set_defaults(handler=_cmd_verify)

    p = subs.add_parser("sample", help="MCMC event estimate")
    _add_common(p, schedule=True)
    p.add_argument("--domain")
    p.add_argument("--bc")
    p.add_argument("--event")
    p.add_argument("--spin", type=int)
    p.set_defaults(handler=_cmd_sample)

    p = subs.add_parser("crossing-prob",
                        help="crossing probability, exact under the cap")
    _add_common(p, schedule=True)
    p.add_argument("--domain")
    p.add_argument("--bc")
    p.add_argument("--event")
    p.add_argument("--spin", type=int)
    p.add_argument("--cap", type=int)
    p.set_defaults(handler=_cmd_crossing_prob)

    p = subs.add_parser("strip-density", help="per-length crossing density")
    _add_common(p, schedule=True)
    p.add_argument("--width", type=int)
    p.add_argument("--stretch", type=int)
    p.add_argument("--bc-mode", dest="bc_mode",
                   choices=("free_horizontal", "wired_vertical_complement"))
    p.add_argument("--rhos")
    p.add_argument("--lam", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--cap", type=int)
    p.add_argument("--no-plot", dest="no_plot", action="store_const",
                   const=True)
    p.set_defaults(handler=_cmd_strip_density)

    p = subs.add_parser("push-probe", help="mixed-boundary crossing rates")
    _add_common(p, schedule=True)
    p.add_argument("--which")
    p.add_argument("--width", type=int)
    p.add_argument("--stretch", type=int)
    p.add_argument("--lam", type=int)
    p.add_argument("--rhos")
    p.add_argument("--cap", type=int)
    p.add_argument("--no-plot", dest="no_plot", action="store_const",
                   const=True)
    p.set_defaults(handler=_cmd_push_probe)

    p = subs.add_parser("phase-scan", help="four-regime classification")
    _add_common(p, schedule=True)
    p.add_argument("--sizes")
    p.add_argument("--cap", type=int)
    p.add_argument("--no-plot", dest="no_plot", action="store_const",
                   const=True)
    p.set_defaults(handler=_cmd_phase_scan)

    p = subs.add_parser("annulus-volumes",
                        help="component-volume tail in an annulus")
    _add_common(p, schedule=True)
    p.add_argument("--side", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--bc")
    p.add_argument("--spin", type=int)
    p.add_argument("--ambient")
    p.add_argument("--no-plot", dest="no_plot", action="store_const",
                   const=True)
    p.set_defaults(handler=_cmd_annulus_volumes)
    return parser


def run(argv=None) -> int:
    """Parse argv and execute; returns the exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.handler(args)
    except (ConfigurationError, EnumerationCapError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
