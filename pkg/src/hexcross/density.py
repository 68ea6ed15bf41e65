"""Strip densities, renormalization-inequality reports, mixed-boundary push
probes, the four-regime phase classifier, and decay probes.

Per-unit-length crossing densities are measured on parallelograms of width
ρ·width and height λ·stretch across a ρ-schedule: the ρ-th root of the
crossing probability estimates the density, and the ρ→∞ limit is replaced by
a weighted log-linear extrapolation in 1/ρ whose uncertainty is propagated
from the per-point standard errors. Every estimator picks exact enumeration
when the domain fits under the cap and Monte Carlo otherwise.

The phase classifier evaluates horizontal-crossing probabilities under free
and wired boundary conditions across a size schedule and applies four
mutually exclusive finite-size criteria (decay, growth, two-sided
boundedness, and boundary-condition splitting). Thresholds (ε = 0.02,
p < 0.01, R² > 0.9) are artifact choices: the source inequalities are
existential, so the classifier reports evidence, not constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy import stats as scipy_stats

from . import exact, hexlat, sampler
from .crossing import (CrossingEvent, center_to_boundary, component_volumes,
                       face_event, horizontal_crossing, vertical_crossing)
from .errors import ConfigurationError
from .exact import DEFAULT_CAP
from .hexlat import HexDomain
from .model import BoundaryCondition, ModelParams
from .sampler import Estimate, Schedule

EPSILON = 0.02
P_THRESHOLD = 0.01
R2_THRESHOLD = 0.9

REFERENCE_GRID = (
    ModelParams(1.0, 0.3, 0.0, 0.0),
    ModelParams(1.0, 0.5774, 0.0, 0.0),
    ModelParams(1.5, 0.5, 0.0, 0.0),
    ModelParams(1.5, 0.45, 0.2, -0.5),
    ModelParams(2.0, 0.5, 0.0, 0.0),
    ModelParams(2.0, 0.4, -0.1, -0.5),
)

SUBCRITICAL = "Subcritical"
SUPERCRITICAL = "Supercritical"
CONTINUOUS = "ContinuousCritical"
DISCONTINUOUS = "DiscontinuousCritical"
UNDETERMINED = "Undetermined"


def _exact_estimate(p: float, n_configs: int) -> Estimate:
    return Estimate(mean=p, std_error=0.0, n_samples=n_configs,
                    autocorrelation_time=0.0, seeds=[], converged=True,
                    flags=["exact"])


def _snap(p: float) -> float:
    """Collapse float fuzz at the ends of [0,1] so frozen chains read as
    exactly 0 or 1."""
    if abs(p) < 1e-12:
        return 0.0
    if abs(1.0 - p) < 1e-12:
        return 1.0
    return min(1.0, max(0.0, p))


def _estimate_probability(domain: HexDomain, params: ModelParams,
                          bc: BoundaryCondition, event: CrossingEvent,
                          schedule: Schedule, cap: Optional[int],
                          complement: bool = False) -> Estimate:
    """Probability of the event (or its complement), exact under the cap."""
    limit = DEFAULT_CAP if cap is None else cap
    if domain.n_faces <= limit:
        p = exact.event_probability(domain, params, bc, event, cap=limit)
        if complement:
            p = 1.0 - p
        return _exact_estimate(_snap(p), 1 << domain.n_faces)
    est = sampler.estimate_event(domain, params, bc, event, schedule)
    if complement:
        est.mean = 1.0 - est.mean
        est.chain_means = [1.0 - m for m in est.chain_means]
    est.mean = _snap(est.mean)
    return est


# -- density curves --------------------------------------------------------------

@dataclass
class DensityCurve:
    """Per-ρ crossing probabilities and their ρ-th roots, with a tail
    extrapolation toward ρ→∞."""

    width: int
    stretch: int
    lam: int
    bc_mode: str
    rho_values: list
    raw_probs: list
    densities: list
    extrapolated: float
    uncertainty: float
    flags: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "width": self.width, "stretch": self.stretch, "lam": self.lam,
            "bc_mode": self.bc_mode, "rho_values": list(self.rho_values),
            "probs": [e.mean for e in self.raw_probs],
            "std_errors": [e.std_error for e in self.raw_probs],
            "densities": list(self.densities),
            "extrapolated": self.extrapolated,
            "uncertainty": self.uncertainty, "flags": list(self.flags),
        }


def _extrapolate_densities(rho_values, densities, sigma_log
                           ) -> tuple[float, float, list]:
    """Weighted log-linear fit of log(density) against 1/ρ; the intercept is
    the ρ→∞ limit. The result is clamped to the tail window opened toward
    the monotone trend: an increasing tail admits values up to 1, a
    decreasing tail values down to 0 (a constant-probability curve has
    densities p^{1/ρ} ↑ 1, so the literal window would exclude the true
    limit)."""
    flags = []
    pts = [(r, d, s) for r, d, s in zip(rho_values, densities, sigma_log)
           if d > 0.0]
    if not pts:
        return 0.0, 0.0, ["all-zero"]
    if len(pts) == 1:
        return pts[0][1], 0.0, ["single-point"]
    x = np.array([1.0 / r for r, _, _ in pts])
    y = np.array([math.log(d) for _, d, _ in pts])
    w = np.array([1.0 / max(s, 1e-9) for _, _, s in pts])
    design = np.column_stack([np.ones_like(x), x])
    wd = design * w[:, None]
    wy = y * w
    coef, *_ = np.linalg.lstsq(wd, wy, rcond=None)
    cov = np.linalg.pinv(wd.T @ wd)
    intercept = float(coef[0])
    sd_int = float(math.sqrt(max(cov[0, 0], 0.0)))
    value = math.exp(intercept)
    uncertainty = value * sd_int
    tail = densities[-min(3, len(densities)):]
    lo, hi = min(tail), max(tail)
    if all(b >= a for a, b in zip(tail, tail[1:])):
        hi = 1.0
    if all(b <= a for a, b in zip(tail, tail[1:])):
        lo = 0.0
    clamped = min(max(value, lo), hi)
    if clamped != value:
        flags.append("clamped")
    return min(max(clamped, 0.0), 1.0), uncertainty, flags


def strip_density(params: ModelParams, width: int, stretch: int,
                  bc_mode: str, rho_schedule, schedule: Schedule,
                  lam: int = 2, height: Optional[int] = None,
                  cap: Optional[int] = None) -> DensityCurve:
    """Density curve for horizontal crossings (free bc) or vertical-crossing
    complements (wired bc) across parallelograms [0, ρ·width] × [0, λ·stretch].

    ``bc_mode`` is "free_horizontal" (crossing density under all-minus
    boundary) or "wired_vertical_complement" (blocking density under
    all-plus boundary). ``height`` overrides the λ·stretch row count for the
    taller strip convention.
    """
    rho_values = sorted(int(r) for r in rho_schedule)
    if len(rho_values) < 2:
        raise ConfigurationError("need at least 2 rho values")
    if min(rho_values) < 1:
        raise ConfigurationError("rho values must be >= 1")
    if bc_mode not in ("free_horizontal", "wired_vertical_complement"):
        raise ConfigurationError(f"unknown bc_mode {bc_mode!r}")
    rows = height if height is not None else lam * stretch
    estimates = []
    densities = []
    flags = []
    for rho in rho_values:
        domain = hexlat.build_hex_box(rho * width, rows)
        if bc_mode == "free_horizontal":
            est = _estimate_probability(
                domain, params, BoundaryCondition.free(),
                horizontal_crossing(domain), schedule, cap)
        else:
            est = _estimate_probability(
                domain, params, BoundaryCondition.wired(),
                vertical_crossing(domain), schedule, cap, complement=True)
        if not est.converged:
            flags.append(f"non-converged:rho={rho}")
        estimates.append(est)
        densities.append(est.mean ** (1.0 / rho) if est.mean > 0 else 0.0)
    sigma_log = []
    for rho, est in zip(rho_values, estimates):
        if est.mean > 0 and est.std_error > 0:
            sigma_log.append(est.std_error / (rho * est.mean))
        else:
            sigma_log.append(0.0)
    extrapolated, uncertainty, fit_flags = _extrapolate_densities(
        rho_values, densities, sigma_log)
    return DensityCurve(width=width, stretch=stretch, lam=lam,
                        bc_mode=bc_mode, rho_values=rho_values,
                        raw_probs=estimates, densities=densities,
                        extrapolated=extrapolated, uncertainty=uncertainty,
                        flags=flags + fit_flags)


def _smallest_c(target: float, reference: float, exponent: float,
                lam: int) -> tuple[float, bool]:
    """Smallest C ≥ 0 with target ≥ λ^{-C} · reference^{exponent}; returns
    (C, finite)."""
    rhs = reference ** exponent
    if target > 0.0:
        if rhs <= 0.0:
            return 0.0, True
        return max(0.0, math.log(rhs / target) / math.log(lam)), True
    if rhs <= 0.0:
        return 0.0, True
    return math.inf, False


def check_strip_inequality(p_curve: DensityCurve, q_curve: DensityCurve,
                           lam: Optional[int] = None) -> dict:
    """Smallest constants making each density dominate a stretched power of
    the other: p ≥ λ^{-C}·q^{S+S/λ} and the q-vs-p mirror. Only finiteness
    is asserted by the harness; the constants themselves are existential and
    reported for trend tracking."""
    if (p_curve.width, p_curve.stretch) != (q_curve.width, q_curve.stretch):
        raise ConfigurationError(
            "density curves must share width and stretch")
    lam = lam if lam is not None else p_curve.lam
    if lam < 2:
        raise ConfigurationError("lambda must be >= 2")
    s = p_curve.stretch
    expo = s + s / lam
    p, q = p_curve.extrapolated, q_curve.extrapolated
    c_p, fin_p = _smallest_c(p, q, expo, lam)
    c_q, fin_q = _smallest_c(q, p, expo, lam)
    flags = []
    if not fin_p:
        flags.append("p-degenerate")
    if not fin_q:
        flags.append("q-degenerate")
    return {"p": p, "q": q, "stretch": s, "lam": lam, "exponent": expo,
            "C_p_from_q": c_p, "C_q_from_p": c_q,
            "finite": fin_p and fin_q, "flags": flags}


def check_renorm_inequality(curve_small: DensityCurve,
                            curve_large: DensityCurve,
                            lam: Optional[int] = None) -> dict:
    """Renormalization constants for the width-tripling pair.

    Primary direction (the unambiguous planar template):
    p_{3w} ≤ λ^C · p_w^{3−9/λ}. The displayed hexagonal form has the same
    symbol on both sides (p ≥ λ^C·p^{…}, almost surely a typo), so that
    reading is also computed and recorded; neither is asserted beyond
    finiteness."""
    if curve_large.width != 3 * curve_small.width:
        raise ConfigurationError("curves must be at widths w and 3w")
    lam = lam if lam is not None else curve_small.lam
    if lam < 2:
        raise ConfigurationError("lambda must be >= 2")
    p_s, p_l = curve_small.extrapolated, curve_large.extrapolated
    expo = 3.0 - 9.0 / lam
    flags = []
    rhs = p_s ** expo if p_s > 0 else 0.0
    if p_l <= 0.0:
        c_primary, finite = 0.0, True
    elif rhs <= 0.0:
        c_primary, finite = math.inf, False
        flags.append("degenerate-small-curve")
    else:
        c_primary = max(0.0, math.log(p_l / rhs) / math.log(lam))
        finite = True
    s = curve_small.stretch
    expo_disp = s - curve_small.width * s / lam
    if p_s > 0:
        rhs_disp = p_s ** expo_disp
        c_displayed = math.log(p_s / rhs_disp) / math.log(lam)
    else:
        c_displayed = None
    return {"p_small": p_s, "p_large": p_l, "lam": lam,
            "exponent_primary": expo, "C_primary": c_primary,
            "exponent_displayed": expo_disp, "C_displayed": c_displayed,
            "finite": finite, "flags": flags}


# -- push probes -----------------------------------------------------------------

def _mixed_bc(primed: bool) -> BoundaryCondition:
    sign = -1 if primed else 1
    return BoundaryCondition.mixed({"Left": sign, "Top": sign,
                                    "Right": sign, "Bottom": -sign})


def push_probe(params: ModelParams, which: str, rho_schedule,
               schedule: Schedule, width: int = 1, stretch: int = 1,
               lam: int = 2, cap: Optional[int] = None) -> dict:
    """Crossing probability under three-sides-plus mixed boundary across a
    ρ-schedule, with the fitted per-length rate c₁ = exp(slope of log-prob
    against ρ, through the origin).

    ``which``: "primal" / "PushPrimal" (+crossing Left→Right under Mixed),
    "dual" / "PushDual" (no vertical +crossing under the sign-flipped
    Mixed), or the same pair with "-strip" suffix evaluated on Strip-kind
    domains.
    """
    aliases = {"pushprimal": "primal", "pushdual": "dual"}
    norm = which.lower()
    strip_kind = norm.endswith("-strip")
    base = norm.removesuffix("-strip")
    base = aliases.get(base, base)
    if base not in ("primal", "dual"):
        raise ConfigurationError(f"unknown probe {which!r}")
    rho_values = sorted(int(r) for r in rho_schedule)
    if len(rho_values) < 2:
        raise ConfigurationError("need at least 2 rho values")
    rows = lam * stretch
    estimates = []
    flags = []
    for rho in rho_values:
        if strip_kind:
            domain = hexlat.build_strip(rho * width, rows)
        else:
            domain = hexlat.build_hex_box(rho * width, rows)
        if base == "primal":
            est = _estimate_probability(domain, params, _mixed_bc(False),
                                        horizontal_crossing(domain),
                                        schedule, cap)
        else:
            est = _estimate_probability(domain, params, _mixed_bc(True),
                                        vertical_crossing(domain),
                                        schedule, cap, complement=True)
        if not est.converged:
            flags.append(f"non-converged:rho={rho}")
        estimates.append(est)
    pts = [(r, e.mean) for r, e in zip(rho_values, estimates) if e.mean > 0]
    if not pts:
        fitted = 0.0
        flags.append("degenerate")
    else:
        num = sum(r * math.log(p) for r, p in pts)
        den = sum(r * r for r, _ in pts)
        fitted = math.exp(num / den)
    if len(pts) < len(rho_values):
        flags.append("zero-probability-points")
    return {"which": which, "rho_values": rho_values,
            "estimates": estimates, "probs": [e.mean for e in estimates],
            "fitted_c1": fitted, "positive": fitted > 0.0, "flags": flags}


def push_disjunction(params: ModelParams, rho_schedule, schedule: Schedule,
                     width: int = 1, stretch: int = 1, lam: int = 2,
                     cap: Optional[int] = None) -> dict:
    """Both push probes plus the disjunction that at least one fitted rate
    is strictly positive."""
    primal = push_probe(params, "primal", rho_schedule, schedule,
                        width, stretch, lam, cap)
    dual = push_probe(params, "dual", rho_schedule, schedule,
                      width, stretch, lam, cap)
    holds = primal["positive"] or dual["positive"]
    flags = []
    if not holds:
        flags.append("both-degenerate")
    return {"primal": primal, "dual": dual, "disjunction_holds": holds,
            "flags": flags}


# -- phase classifier ------------------------------------------------------------

@dataclass
class PhaseVerdict:
    """Outcome of the four-regime classification."""

    regime: str
    params: ModelParams
    sizes: list
    wired_series: list
    free_series: list
    evidence: dict
    flags: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "regime": self.regime,
            "params": {"n": self.params.n, "x": self.params.x,
                       "h": self.params.h, "h_prime": self.params.h_prime},
            "sizes": list(self.sizes),
            "wired": [e.mean for e in self.wired_series],
            "free": [e.mean for e in self.free_series],
            "evidence": self.evidence, "flags": list(self.flags),
        }


def _decay_evidence(sizes, probs) -> dict:
    """Does the series decay to (near) zero? Either every value already sits
    below ε (saturation), or a log-linear fit shows a significantly negative
    slope with a small final value."""
    ev = {"saturated": bool(all(p < EPSILON for p in probs))}
    if ev["saturated"]:
        ev["decays"] = True
        return ev
    if any(p <= 0.0 for p in probs):
        tail_small = all(p < EPSILON for p in probs[-2:])
        ev.update({"decays": bool(tail_small), "zero-values": True})
        return ev
    fit = scipy_stats.linregress(sizes, [math.log(p) for p in probs])
    ev.update({
        "slope": fit.slope, "r_squared": fit.rvalue ** 2,
        "p_value": fit.pvalue, "last": probs[-1],
        "decays": bool(fit.slope < 0 and fit.pvalue < P_THRESHOLD
                       and fit.rvalue ** 2 > R2_THRESHOLD
                       and probs[-1] < EPSILON),
    })
    return ev


def classify_phase(params: ModelParams, size_schedule, schedule: Schedule,
                   cap: Optional[int] = None) -> PhaseVerdict:
    """Estimate horizontal crossings of square parallelograms under wired
    and free boundary conditions across the size schedule and apply the four
    mutually exclusive criteria; exactly one must fire, else Undetermined."""
    sizes = sorted(int(s) for s in size_schedule)
    if len(sizes) < 4:
        raise ConfigurationError("size schedule needs at least 4 sizes")
    wired_series, free_series, flags = [], [], []
    for s in sizes:
        domain = hexlat.build_hex_box(s, s)
        event = horizontal_crossing(domain)
        for bc, out in ((BoundaryCondition.wired(), wired_series),
                        (BoundaryCondition.free(), free_series)):
            est = _estimate_probability(domain, params, bc, event,
                                        schedule, cap)
            if not est.converged:
                flags.append(f"non-converged:size={s},bc={bc.kind}")
            out.append(est)
    wired = [e.mean for e in wired_series]
    free = [e.mean for e in free_series]
    sub_ev = _decay_evidence(sizes, wired)
    sup_ev = _decay_evidence(sizes, [1.0 - p for p in free])
    wired_grow = _decay_evidence(sizes, [1.0 - p for p in wired])
    free_decay = _decay_evidence(sizes, free)
    bounded = all(EPSILON <= p <= 1.0 - EPSILON for p in wired + free)
    clauses = {
        SUBCRITICAL: sub_ev["decays"],
        SUPERCRITICAL: sup_ev["decays"],
        CONTINUOUS: bounded,
        DISCONTINUOUS: wired_grow["decays"] and free_decay["decays"],
    }
    hits = [name for name, hit in clauses.items() if hit]
    regime = hits[0] if len(hits) == 1 else UNDETERMINED
    if len(hits) > 1:
        flags.append("multiple-clauses:" + ",".join(hits))
    evidence = {"subcritical": sub_ev, "supercritical": sup_ev,
                "wired_growth": wired_grow, "free_decay": free_decay,
                "bounded": bounded}
    return PhaseVerdict(regime=regime, params=params, sizes=sizes,
                        wired_series=wired_series, free_series=free_series,
                        evidence=evidence, flags=flags)


# -- decay and escape probes -------------------------------------------------------

def point_to_boundary_probe(params: ModelParams, size_schedule,
                            schedule: Schedule,
                            bc: Optional[BoundaryCondition] = None,
                            cap: Optional[int] = None) -> dict:
    """Center-to-boundary connectivity decay on regular hexagons, plus the
    free/wired gap of the center-face magnetization across sizes.

    Returns the fitted decay rate c (negative log-slope of the connection
    probability) and the gap trend; a frozen chain (probability identically
    zero) is flagged instead of fitted."""
    bc = bc or BoundaryCondition.wired()
    sizes = sorted(int(s) for s in size_schedule)
    if len(sizes) < 2:
        raise ConfigurationError("size schedule needs at least 2 sizes")
    probs, gaps, flags = [], [], []
    for s in sizes:
        domain = hexlat.build_regular_hexagon(s)
        est = _estimate_probability(domain, params, bc,
                                    center_to_boundary(domain),
                                    schedule, cap)
        if not est.converged:
            flags.append(f"non-converged:size={s}")
        probs.append(est.mean)
        center_plus = face_event(domain, hexlat.Face(0, 0))
        gap_pair = [
            _estimate_probability(domain, params, gap_bc, center_plus,
                                  schedule, cap).mean
            for gap_bc in (BoundaryCondition.free(),
                           BoundaryCondition.wired())]
        gaps.append(abs(gap_pair[1] - gap_pair[0]))
    report = {"sizes": sizes, "probs": probs, "gaps": gaps, "flags": flags,
              "gap_decreasing": all(b <= a + 1e-9
                                    for a, b in zip(gaps, gaps[1:]))}
    if all(p <= 0.0 for p in probs):
        report.update({"fitted_c": math.inf, "r_squared": None})
        report["flags"].append("frozen")
        return report
    if all(p >= 1.0 for p in probs):
        report.update({"fitted_c": 0.0, "r_squared": None})
        report["flags"].append("frozen")
        return report
    if any(p <= 0.0 for p in probs):
        report.update({"fitted_c": None, "r_squared": None})
        report["flags"].append("zero-probability-points")
        return report
    fit = scipy_stats.linregress(sizes, [math.log(p) for p in probs])
    report.update({"fitted_c": -fit.slope, "r_squared": fit.rvalue ** 2,
                   "p_value": fit.pvalue})
    return report


def escape_failure_probe(params: ModelParams, size_schedule,
                         schedule: Schedule,
                         bc: Optional[BoundaryCondition] = None,
                         cap: Optional[int] = None) -> dict:
    """Failure rate of the doubling escape: the probability that no + path
    joins the inner hexagon of side s to the boundary of the side-2s
    hexagon. A negative fitted log-slope supports an unbounded + component;
    a nonnegative slope flags the precondition (meant for supercritical
    points) as violated."""
    bc = bc or BoundaryCondition.free()
    sizes = sorted(int(s) for s in size_schedule)
    if len(sizes) < 2:
        raise ConfigurationError("size schedule needs at least 2 sizes")
    fail_probs, flags = [], []
    for s in sizes:
        outer = hexlat.build_regular_hexagon(2 * s)
        inner = hexlat.build_regular_hexagon(s)
        event = CrossingEvent(frozenset(inner.faces),
                              frozenset(outer.boundary_faces),
                              frozenset(outer.faces), 1, name=f"escape{s}")
        est = _estimate_probability(outer, params, bc, event, schedule, cap,
                                    complement=True)
        if not est.converged:
            flags.append(f"non-converged:size={s}")
        fail_probs.append(est.mean)
    report = {"sizes": sizes, "failure_probs": fail_probs, "flags": flags}
    if all(p <= 0.0 for p in fail_probs):
        report.update({"fitted_c": math.inf, "slope": -math.inf})
        report["flags"].append("all-escapes-succeed")
        return report
    if any(p <= 0.0 for p in fail_probs):
        report.update({"fitted_c": None, "slope": None})
        report["flags"].append("zero-probability-points")
        return report
    fit = scipy_stats.linregress(sizes, [math.log(p) for p in fail_probs])
    report.update({"fitted_c": -fit.slope, "slope": fit.slope,
                   "r_squared": fit.rvalue ** 2})
    if fit.slope >= 0:
        report["flags"].append("precondition-violation")
    return report


# -- annulus component volumes ------------------------------------------------------

def annulus_volume_tail(params: ModelParams, side: int, delta: int,
                        schedule: Schedule,
                        bc: Optional[BoundaryCondition] = None,
                        spin: int = 1,
                        domain: Optional[HexDomain] = None) -> dict:
    """Sampled tail of the largest component volume inside the annulus
    between hexagons of side ``side`` and ``side+delta``.

    Components are maximal constant-``spin`` clusters of the ambient domain
    (default: the hexagon of side 2·(side+delta)) intersected with the
    annulus. Reports the survival function S(N) = P[max volume ≥ N] and the
    fitted slope of log S; survival functions are monotone by construction,
    so the content of the check is the negative fitted slope."""
    bc = bc or BoundaryCondition.free()
    annulus = hexlat.build_annulus(side, delta)
    ambient = domain or hexlat.build_regular_hexagon(2 * (side + delta))
    for f in annulus.faces:
        if not ambient.contains(f):
            raise ConfigurationError(
                "ambient domain must contain the annulus")

    def max_volume(config) -> float:
        sizes = component_volumes(config, annulus, spin)
        return float(sizes[0]) if sizes else 0.0

    rows = [sampler.run_chain(ambient, params, bc, [max_volume], schedule,
                              c)[0]
            for c in range(schedule.chains)]
    samples = np.concatenate(rows)
    n_ann = annulus.n_faces
    survival = []
    for n in range(1, n_ann + 1):
        s_n = float((samples >= n).mean())
        if s_n <= 0.0:
            break
        survival.append((n, s_n))
    report = {"side": side, "delta": delta, "annulus_faces": n_ann,
              "n_samples": int(samples.size),
              "mean_max_volume": float(samples.mean()),
              "survival": survival, "flags": []}
    if len(survival) < 2:
        report.update({"slope": None, "monotone": True})
        report["flags"].append("degenerate-tail")
        return report
    ns = [n for n, _ in survival]
    logs = [math.log(s) for _, s in survival]
    fit = scipy_stats.linregress(ns, logs)
    report.update({"slope": fit.slope, "r_squared": fit.rvalue ** 2,
                   "monotone": all(b <= a for a, b in zip(logs, logs[1:]))})
    return report
