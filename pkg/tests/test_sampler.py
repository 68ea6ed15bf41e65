"""Markov-chain sampling: correctness against enumeration, determinism,
and diagnostics."""

import math

import pytest

from hexcross.hexlat import Face, build_hex_box, build_regular_hexagon
from hexcross.model import (BoundaryCondition, ConfigurationError,
                            ModelParams, SpinConfig, nienhuis_critical_x)
from hexcross.crossing import face_event, horizontal_crossing, \
    vertical_crossing
from hexcross.exact import event_probability
from hexcross.sampler import (Estimate, Schedule, chain_rng,
                              delta_cluster_count, estimate_event,
                              estimate_events, estimate_observable,
                              heatbath_sweep, make_chain, run_chain,
                              wolff_step, _resolve_algorithm)

FREE = BoundaryCondition.free()
WIRED = BoundaryCondition.wired()


def test_schedule_validation():
    with pytest.raises(ConfigurationError):
        Schedule(sweeps=0)
    with pytest.raises(ConfigurationError):
        Schedule(burn_in=-1)
    with pytest.raises(ConfigurationError):
        Schedule(thin=0)
    with pytest.raises(ConfigurationError):
        Schedule(chains=0)
    with pytest.raises(ConfigurationError):
        Schedule(algorithm="metropolis")
    with pytest.raises(ConfigurationError):
        Schedule(sweeps=30, thin=10)  # fewer than 4 recorded samples
    with pytest.raises(ConfigurationError):
        Schedule(seed=2 ** 64)
    assert Schedule(sweeps=100, thin=7).n_recorded() == 14


def test_heatbath_agrees_with_enumeration():
    dom = build_hex_box(3, 2)
    params = ModelParams(1.5, 0.45, 0.2, -0.5)
    ev = horizontal_crossing(dom)
    exact_p = event_probability(dom, params, WIRED, ev)
    sched = Schedule(burn_in=300, sweeps=3000, chains=3, seed=11,
                     algorithm="heatbath")
    est = estimate_event(dom, params, WIRED, ev, sched)
    assert est.converged
    assert est.std_error > 0
    assert abs(est.mean - exact_p) <= 4 * est.std_error
    # batch-means trims each chain to a whole number of batches
    per_chain = sched.n_recorded()
    b = int(math.isqrt(per_chain))
    assert 3 * (per_chain - b) < est.n_samples <= 3 * per_chain


def test_wolff_agrees_with_enumeration():
    dom = build_hex_box(3, 2)
    params = ModelParams(1.0, nienhuis_critical_x(1.0), 0.0, 0.0)
    ev = horizontal_crossing(dom)
    exact_p = event_probability(dom, params, FREE, ev)
    sched = Schedule(burn_in=500, sweeps=8000, chains=3, seed=5,
                     algorithm="wolff")
    est = estimate_event(dom, params, FREE, ev, sched)
    assert est.converged
    assert abs(est.mean - exact_p) <= 4 * est.std_error


def test_auto_algorithm_resolution():
    loop_point = ModelParams(1.0, 0.4, 0.0, 0.0)
    field_point = ModelParams(1.0, 0.4, 0.1, 0.0)
    assert _resolve_algorithm(Schedule(algorithm="auto"), loop_point) == \
        "wolff"
    assert _resolve_algorithm(Schedule(algorithm="auto"), field_point) == \
        "heatbath"
    assert _resolve_algorithm(Schedule(algorithm="heatbath"), loop_point) == \
        "heatbath"
    with pytest.raises(ConfigurationError):
        _resolve_algorithm(Schedule(algorithm="wolff"),
                           ModelParams(1.5, 0.4, 0.0, 0.0))
    state = make_chain(build_hex_box(2, 2), ModelParams(2, 0.4, 0, 0),
                       FREE, 0, 0)
    with pytest.raises(ConfigurationError):
        wolff_step(state)


def test_determinism_bitwise():
    dom = build_hex_box(3, 2)
    params = ModelParams(1.5, 0.45, 0.2, -0.5)
    ev = vertical_crossing(dom)
    sched = Schedule(burn_in=100, sweeps=800, chains=3, seed=42,
                     algorithm="heatbath")
    a = estimate_event(dom, params, FREE, ev, sched)
    b = estimate_event(dom, params, FREE, ev, sched)
    assert a.mean == b.mean
    assert a.std_error == b.std_error
    assert a.chain_means == b.chain_means
    assert a.seeds == b.seeds == [(42, 0), (42, 1), (42, 2)]


def test_worker_invariance():
    dom = build_hex_box(3, 2)
    params = ModelParams(1.5, 0.45, 0.2, -0.5)
    ev = horizontal_crossing(dom)
    one = Schedule(burn_in=100, sweeps=600, chains=2, seed=3,
                   algorithm="heatbath", workers=1)
    two = Schedule(burn_in=100, sweeps=600, chains=2, seed=3,
                   algorithm="heatbath", workers=2)
    ea = estimate_event(dom, params, FREE, ev, one)
    eb = estimate_event(dom, params, FREE, ev, two)
    assert ea.mean == eb.mean and ea.std_error == eb.std_error
    assert ea.chain_means == eb.chain_means


def test_shared_trajectories_match_individual_runs():
    dom = build_hex_box(3, 2)
    params = ModelParams(1, 0.5, 0.1, -0.2)
    evs = [horizontal_crossing(dom), vertical_crossing(dom),
           face_event(dom, Face(1, 1))]
    sched = Schedule(burn_in=100, sweeps=600, chains=2, seed=9,
                     algorithm="heatbath")
    batch = estimate_events(dom, params, WIRED, evs, sched)
    for ev, est in zip(evs, batch):
        solo = estimate_event(dom, params, WIRED, ev, sched)
        assert solo.mean == est.mean
        assert solo.std_error == est.std_error
        assert solo.chain_means == est.chain_means


def test_boundary_monotonicity_within_errors():
    # Sampled estimates respect the boundary order up to statistical noise.
    dom = build_hex_box(3, 2)
    params = ModelParams(1, 0.5, 0.0, -0.3)
    ev = horizontal_crossing(dom)
    sched = Schedule(burn_in=200, sweeps=2500, chains=3, seed=17,
                     algorithm="heatbath")
    dob = BoundaryCondition.dobrushin(0, 5)
    ests = [estimate_event(dom, params, bc, ev, sched)
            for bc in (FREE, dob, WIRED)]
    for lo, hi in zip(ests, ests[1:]):
        slack = 3 * math.hypot(lo.std_error, hi.std_error)
        assert lo.mean <= hi.mean + slack


def test_vacuum_point_is_frozen():
    dom = build_regular_hexagon(1)
    params = ModelParams(1, 0.0, 0.0, 0.0)
    ev = face_event(dom, Face(0, 0))
    sched = Schedule(burn_in=20, sweeps=200, chains=3, seed=1,
                     algorithm="heatbath")
    est = estimate_event(dom, params, WIRED, ev, sched)
    assert est.mean == 1.0 and est.std_error == 0.0 and est.converged
    est = estimate_event(dom, params, FREE, ev, sched)
    assert est.mean == 0.0 and est.std_error == 0.0 and est.converged


def test_estimate_observable_constant_and_determinism():
    dom = build_hex_box(2, 2)
    params = ModelParams(1, 0.5, 0, 0)
    sched = Schedule(burn_in=50, sweeps=400, chains=2, seed=8,
                     algorithm="heatbath")
    const = estimate_observable(dom, params, FREE, lambda cfg: 0.5, sched)
    assert const.mean == 0.5 and const.std_error == 0.0
    mag = lambda cfg: cfg.stats()[2] / dom.n_faces
    a = estimate_observable(dom, params, FREE, mag, sched)
    b = estimate_observable(dom, params, FREE, mag, sched)
    assert a.mean == b.mean and a.std_error == b.std_error
    assert -1.0 <= a.mean <= 1.0


def test_strong_field_polarizes():
    dom = build_hex_box(3, 2)
    params = ModelParams(1, 0.5, 2.5, 0.0)
    sched = Schedule(burn_in=200, sweeps=1500, chains=3, seed=4,
                     algorithm="heatbath")
    est = estimate_event(dom, params, FREE, face_event(dom, Face(1, 1)),
                         sched)
    exact_p = event_probability(dom, params, FREE, face_event(dom, Face(1, 1)))
    assert exact_p > 0.9
    assert abs(est.mean - exact_p) <= 4 * max(est.std_error, 1e-3)


def test_make_chain_initial_ladder():
    dom = build_hex_box(2, 2)
    params = ModelParams(1, 0.5, 0, 0)
    s0 = make_chain(dom, params, FREE, 7, 0)
    s1 = make_chain(dom, params, FREE, 7, 1)
    s2 = make_chain(dom, params, FREE, 7, 2)
    assert all(s == 1 for s in s0.config._state[:dom.n_faces])
    assert all(s == -1 for s in s1.config._state[:dom.n_faces])
    assert all(s in (-1, 1) for s in s2.config._state[:dom.n_faces])
    # distinct seeds give distinct streams, same seed reproduces
    assert chain_rng(7, 2).random() == chain_rng(7, 2).random()
    assert chain_rng(7, 2).random() != chain_rng(8, 2).random()


def test_checkpoint_detects_drift():
    dom = build_hex_box(2, 2)
    params = ModelParams(1, 0.5, 0.1, 0)
    state = make_chain(dom, params, WIRED, 0, 0)
    heatbath_sweep(state)
    state.checkpoint()
    assert len(state.diagnostics) >= 1
    # corrupt the raw state behind the incremental bookkeeping's back
    state.config._state[0] = -state.config._state[0]
    with pytest.raises(RuntimeError, match="drifted"):
        state.checkpoint()


def test_delta_cluster_count_fixture():
    dom = build_regular_hexagon(1)
    params = ModelParams(1, 0.5, 0, 0)
    state = make_chain(dom, params, FREE, 0, 0)  # all plus, ring minus
    # flipping the center to -1 carves out a new isolated minus component
    assert delta_cluster_count(state, (0, 0), -1) == 1
    assert delta_cluster_count(state, (0, 0), 1) == 0  # no-op
    # flipping a rim face to -1 joins it to the exterior minus ring
    assert delta_cluster_count(state, (1, 0), -1) == 0


def test_run_chain_shape_and_estimate_json():
    dom = build_hex_box(2, 2)
    params = ModelParams(1, 0.5, 0.1, 0)
    sched = Schedule(burn_in=10, sweeps=40, chains=1, seed=0,
                     algorithm="heatbath")
    ev = face_event(dom, Face(0, 0))
    from hexcross.exact import as_predicate
    rows = run_chain(dom, params, FREE, [as_predicate(ev)], sched, 0)
    assert rows.shape == (1, 40)
    assert set(float(v) for v in rows[0]) <= {0.0, 1.0}
    est = Estimate(mean=0.5, std_error=0.1, n_samples=40,
                   autocorrelation_time=1.2, seeds=[(0, 0)])
    doc = est.to_json_dict()
    assert doc["mean"] == 0.5 and doc["seeds"] == [[0, 0]]
    assert doc["converged"] is True and doc["flags"] == []
