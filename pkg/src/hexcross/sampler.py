"""Markov-chain Monte Carlo for the spin measure on domains beyond the
enumeration cap.

The workhorse kernel is single-site heat bath: each face is resampled from
its exact conditional distribution, whose log-odds are the incremental
statistics deltas dotted with the coupling vector. The component-count term
makes the measure nonlocal, so correctness rests on the exact incremental
cluster-count delta provided by the configuration layer (bounded search with
recount fallback). A cluster-flip fast path is available only where it is
provably valid (n=1, no external fields): bonds between equal spins open
with probability 1−x, and any cluster that captures a frozen exterior face
through an open bond is rejected as a whole, which preserves detailed
balance with the boundary condition held fixed.

Randomness comes from the counter-based Philox generator keyed by
(seed, chain index), so trajectories are reproducible bit-for-bit and chains
are independent streams. Error bars use pooled batch means, which absorb
autocorrelation; chains start from all-plus, all-minus, and random states,
and disagreement of chain means beyond four combined standard errors flags
the estimate as non-converged (it is still returned).
"""

from __future__ import annotations

import math
import os
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import ConfigurationError
from .exact import EventPredicate, as_predicate
from .hexlat import Face, HexDomain
from .model import BoundaryCondition, ModelParams, SpinConfig

CHECKPOINT_INTERVAL = 100


@dataclass(frozen=True)
class Schedule:
    """Sampling plan: ``sweeps`` recorded passes after ``burn_in``, keeping
    every ``thin``-th measurement, with ``chains`` independent streams."""

    burn_in: int = 200
    sweeps: int = 2000
    thin: int = 1
    chains: int = 3
    seed: int = 0
    algorithm: str = "auto"
    workers: Optional[int] = None

    def __post_init__(self):
        if self.burn_in < 0 or self.sweeps <= 0 or self.thin <= 0:
            raise ConfigurationError("schedule counts must be positive")
        if self.chains < 1:
            raise ConfigurationError("need at least one chain")
        if self.algorithm not in ("auto", "heatbath", "wolff"):
            raise ConfigurationError(
                f"unknown algorithm {self.algorithm!r}")
        if self.sweeps // self.thin < 4:
            raise ConfigurationError(
                "schedule must record at least 4 samples per chain "
                "(two batches of two)")
        if not 0 <= self.seed < 2 ** 64:
            raise ConfigurationError("seed must fit in 64 bits")

    def n_recorded(self) -> int:
        return self.sweeps // self.thin


@dataclass
class Estimate:
    """Monte Carlo estimate with batch-means uncertainty."""

    mean: float
    std_error: float
    n_samples: int
    autocorrelation_time: float
    seeds: list
    converged: bool = True
    chain_means: list = field(default_factory=list)
    flags: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "mean": self.mean, "std_error": self.std_error,
            "n_samples": self.n_samples,
            "autocorrelation_time": self.autocorrelation_time,
            "seeds": [list(s) for s in self.seeds],
            "converged": self.converged,
            "chain_means": list(self.chain_means),
            "flags": list(self.flags),
        }


class ChainState:
    """One Markov chain: configuration, generator, and diagnostics.

    The diagnostics ring buffer records (sweep index, statistics tuple) at
    every checkpoint; checkpoints recount the cached statistics from scratch
    and fail loudly on any drift of the incremental bookkeeping.
    """

    __slots__ = ("config", "params", "bc", "rng", "sweep_count",
                 "chain_index", "diagnostics", "algorithm")

    def __init__(self, config: SpinConfig, params: ModelParams,
                 rng: np.random.Generator, chain_index: int = 0,
                 algorithm: str = "heatbath"):
        self.config = config
        self.params = params
        self.bc = config.bc
        self.rng = rng
        self.sweep_count = 0
        self.chain_index = chain_index
        self.algorithm = algorithm
        self.diagnostics = deque(maxlen=64)

    def checkpoint(self) -> None:
        cached = self.config.stats()
        recounted = self.config.recount()
        if cached != recounted:
            raise RuntimeError(
                f"incremental statistics drifted at sweep "
                f"{self.sweep_count}: cached {cached} != recount {recounted}")
        self.diagnostics.append((self.sweep_count, recounted))


def chain_rng(seed: int, chain_index: int) -> np.random.Generator:
    """Counter-based Philox stream keyed by (seed, chain index)."""
    return np.random.Generator(np.random.Philox(key=[seed, chain_index]))


def make_chain(domain: HexDomain, params: ModelParams,
               bc: BoundaryCondition, seed: int, chain_index: int,
               algorithm: str = "heatbath") -> ChainState:
    """Chain with the standard initial state ladder: chain 0 all-plus,
    chain 1 all-minus, further chains random."""
    rng = chain_rng(seed, chain_index)
    if chain_index == 0:
        cfg = SpinConfig.all_plus(domain, bc)
    elif chain_index == 1:
        cfg = SpinConfig.all_minus(domain, bc)
    else:
        cfg = SpinConfig.random(domain, bc, rng)
    return ChainState(cfg, params, rng, chain_index, algorithm)


# -- kernels --------------------------------------------------------------------

def _flip_log_odds(config: SpinConfig, params: ModelParams, i: int,
                   new_spin: int) -> float:
    de, dk, dr, drp = config.delta_stats(i, new_spin)
    lw = (dk * math.log(params.n) + dr * params.h
          + 0.5 * drp * params.h_prime)
    if params.x == 0.0:
        if de > 0:
            return -math.inf
        if de < 0:
            return math.inf
        return lw
    return lw + de * math.log(params.x)


def heatbath_step(state: ChainState, face, u: Optional[float] = None
                  ) -> ChainState:
    """Resample one face from its exact conditional distribution.

    The flip to the opposite spin happens with probability
    sigmoid(Δ log w); ``u`` is the uniform variate (drawn from the chain's
    stream when omitted). Returns the same state object, updated in place.
    """
    config = state.config
    i = face if isinstance(face, int) else config.domain.index(Face(*face))
    if u is None:
        u = float(state.rng.random())
    new_spin = -config.spin_at(i)
    delta = _flip_log_odds(config, state.params, i, new_spin)
    if delta >= 0:
        accept = (delta == math.inf) or (u < 1.0 / (1.0 + math.exp(-delta)))
    else:
        accept = (delta > -math.inf) and (u < math.exp(delta)
                                          / (1.0 + math.exp(delta)))
    if accept:
        config.flip(i)
    return state


def delta_cluster_count(state: ChainState, face, new_spin: int) -> int:
    """Exact change in the constant-spin component count if ``face`` takes
    ``new_spin`` (local merge analysis plus bounded split search with
    recount fallback)."""
    config = state.config
    i = face if isinstance(face, int) else config.domain.index(Face(*face))
    return config.delta_stats(i, new_spin)[1]


def heatbath_sweep(state: ChainState) -> ChainState:
    """One pass over all faces in index order; uniforms for the whole sweep
    are drawn in one block so streams stay aligned across accept/reject
    patterns."""
    n = state.config.domain.n_faces
    us = state.rng.random(n)
    for i in range(n):
        heatbath_step(state, i, float(us[i]))
    state.sweep_count += 1
    if state.sweep_count % CHECKPOINT_INTERVAL == 0:
        state.checkpoint()
    return state


def wolff_step(state: ChainState) -> ChainState:
    """One cluster-flip attempt (valid only at n=1 with no external fields).

    Grows a same-spin cluster from a random seed face, opening each equal-
    spin bond with probability 1−x. If an open bond reaches a frozen
    exterior face the whole move is rejected; otherwise the cluster flips.
    """
    params = state.params
    if not (params.n == 1.0 and params.h == 0.0 and params.h_prime == 0.0):
        raise ConfigurationError(
            "cluster updates are only valid at n=1 with h = h' = 0")
    config = state.config
    domain = config.domain
    n = domain.n_faces
    rng = state.rng
    p_add = 1.0 - params.x
    seed_face = int(rng.integers(n))
    sign = config.spin_at(seed_face)
    in_cluster = [False] * n
    in_cluster[seed_face] = True
    stack = [seed_face]
    members = [seed_face]
    captured = False
    st = config._state
    while stack:
        u = stack.pop()
        for v in domain.nbr_nodes[u]:
            if st[v] != sign:
                continue
            if v < n and in_cluster[v]:
                continue
            if rng.random() >= p_add:
                continue
            if v >= n:
                captured = True
                stack.clear()
                break
            in_cluster[v] = True
            members.append(v)
            stack.append(v)
    if not captured:
        for i in members:
            st[i] = -sign
        config.recount()
    state.sweep_count += 1
    if state.sweep_count % CHECKPOINT_INTERVAL == 0:
        state.checkpoint()
    return state


def _resolve_algorithm(schedule: Schedule, params: ModelParams) -> str:
    if schedule.algorithm == "auto":
        if params.n == 1.0 and params.h == 0.0 and params.h_prime == 0.0:
            return "wolff"
        return "heatbath"
    if schedule.algorithm == "wolff" and not (
            params.n == 1.0 and params.h == 0.0 and params.h_prime == 0.0):
        raise ConfigurationError(
            "cluster updates are only valid at n=1 with h = h' = 0")
    return schedule.algorithm


def run_chain(domain: HexDomain, params: ModelParams, bc: BoundaryCondition,
              measures: list, schedule: Schedule,
              chain_index: int) -> np.ndarray:
    """Drive one chain through the schedule; returns an array of shape
    (n_measures, n_recorded) with one row per measurement function."""
    algorithm = _resolve_algorithm(schedule, params)
    state = make_chain(domain, params, bc, schedule.seed, chain_index,
                       algorithm)
    step = heatbath_sweep if algorithm == "heatbath" else wolff_step
    for _ in range(schedule.burn_in):
        step(state)
    n_rec = schedule.n_recorded()
    out = np.empty((len(measures), n_rec), dtype=np.float64)
    rec = 0
    for s in range(schedule.sweeps):
        step(state)
        if (s + 1) % schedule.thin == 0 and rec < n_rec:
            for m, fn in enumerate(measures):
                out[m, rec] = float(fn(state.config))
            rec += 1
    state.checkpoint()
    return out


def _batch_stats(samples: np.ndarray) -> tuple[float, float, int]:
    """(batch size, per-chain batch means flattened, trimmed length) helper:
    returns (b, means, kept) for one chain's sample row."""
    n = len(samples)
    b = max(1, int(math.isqrt(n)))
    nb = n // b
    kept = nb * b
    means = samples[:kept].reshape(nb, b).mean(axis=1)
    return b, means, kept


def _reduce_chains(rows: list[np.ndarray], seeds: list) -> Estimate:
    chain_means = [float(r.mean()) for r in rows]
    b = None
    all_bm = []
    trimmed = []
    per_chain_se = []
    for r in rows:
        b, means, kept = _batch_stats(r)
        all_bm.append(means)
        trimmed.append(r[:kept])
        if len(means) > 1:
            per_chain_se.append(float(means.std(ddof=1))
                                / math.sqrt(len(means)))
        else:
            per_chain_se.append(0.0)
    bm = np.concatenate(all_bm)
    pool = np.concatenate(trimmed)
    mean = float(pool.mean())
    if len(bm) > 1:
        se = float(bm.std(ddof=1)) / math.sqrt(len(bm))
    else:
        se = 0.0
    var_s = float(pool.var(ddof=1)) if len(pool) > 1 else 0.0
    var_bm = float(bm.var(ddof=1)) if len(bm) > 1 else 0.0
    tau = (b * var_bm / var_s) if var_s > 0 else 0.0
    flags = []
    converged = True
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            gap = abs(chain_means[i] - chain_means[j])
            tol = 4.0 * math.hypot(per_chain_se[i], per_chain_se[j])
            if gap > tol and gap > 0:
                converged = False
    if not converged:
        flags.append("chain-disagreement")
    return Estimate(mean=mean, std_error=se, n_samples=int(pool.size),
                    autocorrelation_time=tau, seeds=seeds,
                    converged=converged, chain_means=chain_means,
                    flags=flags)


def estimate_events(domain: HexDomain, params: ModelParams,
                    bc: BoundaryCondition, events: list,
                    schedule: Schedule) -> list[Estimate]:
    """Estimate several event probabilities from the same trajectories.

    Events do not consume randomness, so the estimates are identical to
    running :func:`estimate_event` once per event, at a third of the cost.
    Results are independent of the worker count (chains are reduced in
    chain order)."""
    preds = [as_predicate(e) for e in events]
    seeds = [(schedule.seed, c) for c in range(schedule.chains)]
    workers = schedule.workers
    if workers is None:
        env = os.environ.get("HEXCROSS_THREADS", "")
        workers = int(env) if env.isdigit() else 1
    workers = max(1, min(int(workers), schedule.chains))
    picklable = all(p.fn is None for p in preds)
    if workers > 1 and picklable:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_chain, domain, params, bc, preds,
                                   schedule, c)
                       for c in range(schedule.chains)]
            chain_rows = [f.result() for f in futures]
    else:
        chain_rows = [run_chain(domain, params, bc, preds, schedule, c)
                      for c in range(schedule.chains)]
    out = []
    for m in range(len(preds)):
        rows = [cr[m] for cr in chain_rows]
        out.append(_reduce_chains(rows, seeds))
    return out


def estimate_event(domain: HexDomain, params: ModelParams,
                   bc: BoundaryCondition, a, schedule: Schedule) -> Estimate:
    """Monte Carlo estimate of one event probability."""
    return estimate_events(domain, params, bc, [a], schedule)[0]


def estimate_observable(domain: HexDomain, params: ModelParams,
                        bc: BoundaryCondition, fn: Callable,
                        schedule: Schedule) -> Estimate:
    """Monte Carlo estimate of a real-valued observable fn(config)."""
    preds_ok = [fn]
    seeds = [(schedule.seed, c) for c in range(schedule.chains)]
    chain_rows = [run_chain(domain, params, bc, preds_ok, schedule, c)
                  for c in range(schedule.chains)]
    rows = [cr[0] for cr in chain_rows]
    return _reduce_chains(rows, seeds)
