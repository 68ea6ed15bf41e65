"""Matplotlib renderings of report documents, written next to the delimited
output. All figures use the Agg backend and strip the software tag from PNG
metadata so reruns with identical configs emit identical bytes."""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_SAVE_KW = {"dpi": 144, "metadata": {"Software": None},
            "bbox_inches": "tight"}


def _finish(fig, path: str) -> str:
    fig.savefig(path, **_SAVE_KW)
    plt.close(fig)
    return path


def plot_density_curve(curve, path: str) -> str:
    """Per-ρ densities with the extrapolated limit band."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    rho = curve.rho_values
    ax.plot(rho, curve.densities, "o-", color="#1f77b4", label="density")
    err = [e.std_error / (r * e.mean) * d if e.mean > 0 else 0.0
           for r, e, d in zip(rho, curve.raw_probs, curve.densities)]
    ax.errorbar(rho, curve.densities, yerr=err, fmt="none", ecolor="#1f77b4",
                alpha=0.5)
    ax.axhline(curve.extrapolated, color="#d62728", ls="--",
               label=f"extrapolated {curve.extrapolated:.3f}")
    if curve.uncertainty > 0:
        ax.axhspan(curve.extrapolated - curve.uncertainty,
                   curve.extrapolated + curve.uncertainty,
                   color="#d62728", alpha=0.15)
    ax.set_xlabel("rho")
    ax.set_ylabel("prob^(1/rho)")
    ax.set_title(f"strip density, {curve.bc_mode}, width {curve.width}")
    ax.legend(loc="best", fontsize=8)
    return _finish(fig, path)


def plot_phase_scan(verdict, path: str) -> str:
    """Wired and free crossing series across sizes."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    for series, color, label in ((verdict.wired_series, "#d62728", "wired"),
                                 (verdict.free_series, "#1f77b4", "free")):
        ax.errorbar(verdict.sizes, [e.mean for e in series],
                    yerr=[e.std_error for e in series], fmt="o-",
                    color=color, label=label, capsize=3)
    ax.axhspan(0.0, 0.02, color="gray", alpha=0.15)
    ax.axhspan(0.98, 1.0, color="gray", alpha=0.15)
    ax.set_ylim(-0.05, 1.05)
    ax.set_xlabel("box size")
    ax.set_ylabel("horizontal crossing probability")
    ax.set_title(f"phase scan: {verdict.regime}")
    ax.legend(loc="best", fontsize=8)
    return _finish(fig, path)


def plot_push_probe(report: dict, path: str) -> str:
    """Log crossing probability against ρ with the fitted rate line."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    probes = ([report] if "probs" in report
              else [report["primal"], report["dual"]])
    colors = ("#1f77b4", "#d62728")
    for probe, color in zip(probes, colors):
        rho = probe["rho_values"]
        pts = [(r, p) for r, p in zip(rho, probe["probs"]) if p > 0]
        if not pts:
            continue
        ax.plot([r for r, _ in pts], [math.log(p) for _, p in pts], "o",
                color=color, label=f"{probe['which']}")
        c1 = probe["fitted_c1"]
        if c1 > 0:
            ax.plot(rho, [r * math.log(c1) for r in rho], "--", color=color,
                    alpha=0.7, label=f"c1={c1:.3f}")
    ax.set_xlabel("rho")
    ax.set_ylabel("log crossing probability")
    ax.set_title("mixed-boundary push probe")
    ax.legend(loc="best", fontsize=8)
    return _finish(fig, path)


def plot_annulus_tail(report: dict, path: str) -> str:
    """Log survival function of the largest annulus component volume."""
    fig, ax = plt.subplots(figsize=(5.2, 3.6))
    surv = report["survival"]
    if surv:
        ns = [n for n, _ in surv]
        ax.semilogy(ns, [s for _, s in surv], "o-", color="#1f77b4",
                    label="P[max volume >= N]")
        slope = report.get("slope")
        if slope is not None:
            s0 = surv[0]
            ax.semilogy(ns, [s0[1] * math.exp(slope * (n - s0[0]))
                             for n in ns], "--", color="#d62728",
                        label=f"slope {slope:.3f}")
    ax.set_xlabel("N")
    ax.set_ylabel("survival")
    ax.set_title(f"annulus({report['side']},{report['delta']}) "
                 "component-volume tail")
    ax.legend(loc="best", fontsize=8)
    return _finish(fig, path)
