"""Density curves, inequality constants, push probes, phase classifier,
and the decay/escape/annulus probes."""

import math

import pytest

from hexcross.model import (BoundaryCondition, ConfigurationError,
                            ModelParams, nienhuis_critical_x)
from hexcross.sampler import Schedule
from hexcross.density import (DensityCurve, REFERENCE_GRID,
                              annulus_volume_tail, check_renorm_inequality,
                              check_strip_inequality, classify_phase,
                              escape_failure_probe, point_to_boundary_probe,
                              push_disjunction, push_probe, strip_density,
                              _decay_evidence, _extrapolate_densities)

XC1 = nienhuis_critical_x(1.0)
EXACT_SCHED = Schedule(burn_in=50, sweeps=200, chains=2, seed=0,
                       algorithm="heatbath")
SAMPLED = Schedule(burn_in=100, sweeps=600, chains=2, seed=0,
                   algorithm="heatbath")


def test_reference_grid_is_in_the_proven_regime():
    assert len(REFERENCE_GRID) == 6
    for params in REFERENCE_GRID:
        assert params.is_fkg_regime()
        assert params.n in (1.0, 1.5, 2.0)


def test_extrapolation_constant_probability_limits_to_one():
    p = 0.3
    rhos = [2, 4, 8]
    densities = [p ** (1.0 / r) for r in rhos]
    value, sigma, flags = _extrapolate_densities(rhos, densities,
                                                 [0.0, 0.0, 0.0])
    assert value == pytest.approx(1.0, abs=1e-9)
    assert sigma == pytest.approx(0.0, abs=1e-6)


def test_extrapolation_edge_cases():
    value, sigma, flags = _extrapolate_densities([2, 4], [0.0, 0.0],
                                                 [0.0, 0.0])
    assert value == 0.0 and "all-zero" in flags
    value, sigma, flags = _extrapolate_densities([2, 4], [0.0, 0.5],
                                                 [0.0, 0.0])
    assert value == 0.5 and "single-point" in flags
    # decreasing tail opens the window down to zero
    value, _, flags = _extrapolate_densities([2, 4, 8], [0.9, 0.5, 0.2],
                                             [0.0, 0.0, 0.0])
    assert 0.0 <= value <= 0.2


def test_strip_density_exact_curve():
    params = ModelParams(1, XC1, 0, 0)
    curve = strip_density(params, width=1, stretch=1,
                          bc_mode="free_horizontal",
                          rho_schedule=[2, 4, 6, 8], schedule=EXACT_SCHED)
    assert curve.rho_values == [2, 4, 6, 8]
    assert all(e.flags == ["exact"] for e in curve.raw_probs)
    probs = [e.mean for e in curve.raw_probs]
    assert all(b < a for a, b in zip(probs, probs[1:]))  # longer is harder
    assert all(0 < d < 1 for d in curve.densities)
    assert 0.0 <= curve.extrapolated <= 1.0
    doc = curve.to_json_dict()
    assert doc["probs"] == probs
    assert doc["bc_mode"] == "free_horizontal"


def test_strip_density_validation():
    params = ModelParams(1, 0.3, 0, 0)
    with pytest.raises(ConfigurationError):
        strip_density(params, 1, 1, "free_horizontal", [2], EXACT_SCHED)
    with pytest.raises(ConfigurationError):
        strip_density(params, 1, 1, "free_horizontal", [0, 2], EXACT_SCHED)
    with pytest.raises(ConfigurationError):
        strip_density(params, 1, 1, "sideways", [2, 4], EXACT_SCHED)


def test_strip_density_vacuum_point_is_all_zero():
    params = ModelParams(1, 0.0, 0.0, 0.0)
    curve = strip_density(params, width=1, stretch=1,
                          bc_mode="free_horizontal", rho_schedule=[2, 3],
                          schedule=EXACT_SCHED)
    assert all(e.mean == 0.0 for e in curve.raw_probs)
    assert curve.extrapolated == 0.0
    assert "all-zero" in curve.flags


def test_strip_inequality_on_matched_curves():
    params = ModelParams(1, XC1, 0, 0)
    p_curve = strip_density(params, 1, 1, "free_horizontal", [2, 4],
                            EXACT_SCHED)
    q_curve = strip_density(params, 1, 1, "wired_vertical_complement",
                            [2, 4], EXACT_SCHED)
    out = check_strip_inequality(p_curve, q_curve)
    assert out["finite"]
    assert out["exponent"] == pytest.approx(1 + 1 / 2)
    assert out["C_p_from_q"] >= 0.0 and out["C_q_from_p"] >= 0.0
    assert out["flags"] == []


def synthetic_curve(extrapolated, width=1, stretch=1, lam=2):
    return DensityCurve(width=width, stretch=stretch, lam=lam,
                        bc_mode="free_horizontal", rho_values=[2, 4],
                        raw_probs=[], densities=[extrapolated] * 2,
                        extrapolated=extrapolated, uncertainty=0.0)


def test_strip_inequality_trivial_cases():
    # both certain: any C >= 0 works, the smallest is 0
    out = check_strip_inequality(synthetic_curve(1.0), synthetic_curve(1.0))
    assert out["C_p_from_q"] == 0.0 and out["C_q_from_p"] == 0.0
    # p = 0 against q > 0 cannot be dominated by any finite constant
    out = check_strip_inequality(synthetic_curve(0.0), synthetic_curve(0.5))
    assert not out["finite"]
    assert "p-degenerate" in out["flags"]
    with pytest.raises(ConfigurationError):
        check_strip_inequality(synthetic_curve(1.0),
                               synthetic_curve(1.0, stretch=2))
    with pytest.raises(ConfigurationError):
        check_strip_inequality(synthetic_curve(1.0), synthetic_curve(1.0),
                               lam=1)


def test_renorm_inequality_trivial_and_exact():
    out = check_renorm_inequality(synthetic_curve(1.0, width=1),
                                  synthetic_curve(1.0, width=3))
    assert out["C_primary"] == 0.0 and out["finite"]
    # exact pair at width 1 and 3
    params = ModelParams(1, 0.3, 0, 0)
    small = strip_density(params, 1, 1, "free_horizontal", [2, 3],
                          EXACT_SCHED)
    large = strip_density(params, 3, 1, "free_horizontal", [2, 3],
                          EXACT_SCHED)
    out = check_renorm_inequality(small, large)
    assert out["finite"]
    assert out["C_primary"] >= 0.0
    assert out["exponent_primary"] == pytest.approx(3 - 9 / 2)
    with pytest.raises(ConfigurationError):
        check_renorm_inequality(small, small)


def test_push_probes_at_self_dual_point():
    params = ModelParams(1, XC1, 0, 0)
    out = push_disjunction(params, [2, 4], EXACT_SCHED)
    assert out["disjunction_holds"]
    assert out["flags"] == []
    c_primal = out["primal"]["fitted_c1"]
    c_dual = out["dual"]["fitted_c1"]
    assert 0.0 < c_primal <= 1.0 and 0.0 < c_dual <= 1.0
    # spin-flip symmetry at h = h' = 0 maps one probe onto the other
    assert c_primal == pytest.approx(c_dual, abs=1e-12)


def test_push_probe_aliases_and_strip_kind():
    params = ModelParams(1, 0.05, 2.0, 0)
    out = push_probe(params, "PushPrimal", [2, 4], EXACT_SCHED)
    assert out["which"] == "PushPrimal"
    assert out["fitted_c1"] > 0.9  # ordered phase pushes the crossing through
    strip_out = push_probe(params, "PushDual-strip", [2, 4], EXACT_SCHED)
    assert strip_out["positive"] is (strip_out["fitted_c1"] > 0)
    with pytest.raises(ConfigurationError):
        push_probe(params, "sideways", [2, 4], EXACT_SCHED)
    with pytest.raises(ConfigurationError):
        push_probe(params, "primal", [2], EXACT_SCHED)


def test_decay_evidence_unit_cases():
    assert _decay_evidence([1, 2, 3], [0.01, 0.005, 0.001])["decays"]
    ev = _decay_evidence([1, 2, 3, 4], [0.9, 0.9, 0.9, 0.9])
    assert not ev["decays"]
    # clean geometric decay to below epsilon
    ev = _decay_evidence([1, 2, 3, 4], [0.5, 0.1, 0.02, 0.004])
    assert ev["decays"] and ev["slope"] < 0
    # decaying but still large at the end: not accepted
    ev = _decay_evidence([1, 2, 3, 4], [0.9, 0.8, 0.7, 0.6])
    assert not ev["decays"]
    # zeros short-circuit the log fit
    ev = _decay_evidence([1, 2, 3, 4], [0.5, 0.0, 0.0, 0.0])
    assert ev["decays"] and ev.get("zero-values")


def test_classifier_requires_four_sizes():
    with pytest.raises(ConfigurationError):
        classify_phase(ModelParams(1, 0.5, 0, 0), [1, 2, 3], EXACT_SCHED)


def test_classifier_supercritical_under_strong_field():
    verdict = classify_phase(ModelParams(1, 0.5, 1.0, 0), [2, 3, 4, 5],
                             SAMPLED)
    assert verdict.regime == "Supercritical"
    assert verdict.evidence["supercritical"]["decays"]
    doc = verdict.to_json_dict()
    assert doc["regime"] == "Supercritical"
    assert len(doc["wired"]) == 4


def test_classifier_discontinuous_at_deep_subcritical_loop_weight():
    params = ModelParams(1, 0.1 * XC1, 0, 0)
    verdict = classify_phase(params, [1, 2, 3, 4], EXACT_SCHED)
    assert verdict.regime == "DiscontinuousCritical"
    assert verdict.evidence["wired_growth"]["decays"]
    assert verdict.evidence["free_decay"]["decays"]


def test_point_to_boundary_decay():
    report = point_to_boundary_probe(ModelParams(1, 0.3, -0.8, 0), [1, 2],
                                     EXACT_SCHED)
    assert report["probs"][1] < report["probs"][0]
    assert report["fitted_c"] > 0.0
    assert report["gap_decreasing"]
    assert report["flags"] == []


def test_point_to_boundary_frozen_cases():
    params = ModelParams(1, 0.0, 0.0, 0.0)
    wired = point_to_boundary_probe(params, [1, 2], EXACT_SCHED)
    assert wired["fitted_c"] == 0.0 and "frozen" in wired["flags"]
    free = point_to_boundary_probe(params, [1, 2], EXACT_SCHED,
                                   bc=BoundaryCondition.free())
    assert free["fitted_c"] == math.inf and "frozen" in free["flags"]
    with pytest.raises(ConfigurationError):
        point_to_boundary_probe(params, [1], EXACT_SCHED)


def test_escape_probe_flags_subcritical_misuse():
    params = ModelParams(1, 0.1 * XC1, 0, 0)
    light = Schedule(burn_in=50, sweeps=300, chains=2, seed=0,
                     algorithm="heatbath")
    report = escape_failure_probe(params, [1, 2], light)
    assert "precondition-violation" in report["flags"]
    assert all(p > 0.99 for p in report["failure_probs"])


def test_escape_probe_supercritical_trend():
    # strong plus field: escapes essentially always succeed
    params = ModelParams(1, 0.5, 2.0, 0)
    light = Schedule(burn_in=50, sweeps=300, chains=2, seed=0,
                     algorithm="heatbath")
    report = escape_failure_probe(params, [1, 2], light)
    assert ("all-escapes-succeed" in report["flags"]
            or "zero-probability-points" in report["flags"]
            or (report["slope"] is not None and report["slope"] < 0))
    assert "precondition-violation" not in report["flags"]


def test_annulus_volume_tail_subcritical():
    report = annulus_volume_tail(ModelParams(1, 0.45, 0, 0), 1, 1, SAMPLED)
    assert report["monotone"]
    assert report["slope"] is not None and report["slope"] < 0
    assert report["n_samples"] > 0
    assert report["survival"][0][1] <= 1.0


def test_annulus_requires_containing_domain():
    from hexcross import hexlat
    with pytest.raises(ConfigurationError):
        annulus_volume_tail(ModelParams(1, 0.45, 0, 0), 1, 1, SAMPLED,
                            domain=hexlat.build_regular_hexagon(1))
