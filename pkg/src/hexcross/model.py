"""Spin, loop and occupation-state configurations and their exact weights.

The central measure lives on ±1 spins attached to the faces of a
:class:`~hexcross.hexlat.HexDomain`, with fixed exterior spins supplied by a
boundary condition. Its log-weight is

    ``k*log(n) + e*log(x) + h*r + (h_prime/2)*r_prime``

where, for a configuration together with its exterior ring:

* ``e``  counts disagreement edges, boundary edges included;
* ``k``  counts constant-spin connected components of the domain plus the
  exterior ring (components of both signs, exterior-only components
  included -- any constant offset cancels in probability ratios);
* ``r``  is the sum of domain spins;
* ``r_prime`` sums, over in-domain triangles of mutually adjacent faces, the
  common spin of each monochromatic triangle.

Everything is done in log space; ``x = 0`` gives log-weight ``-inf`` whenever
``e > 0`` rather than an error.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field

import numpy as np

from . import hexlat
from .errors import ConfigurationError
from .hexlat import Face, HexDomain

NEG_INF = float("-inf")

#: node budget for the local split/merge search before falling back to a
#: full cluster recount
SPLIT_SEARCH_BUDGET = 512


@dataclass(frozen=True)
class ModelParams:
    """Loop-weight ``n``, edge-weight ``x``, field ``h``, triangle field
    ``h_prime``."""

    n: float
    x: float
    h: float = 0.0
    h_prime: float = 0.0

    def __post_init__(self):
        if not (self.n > 0):
            raise ConfigurationError(f"n must be positive, got {self.n}")
        if not (self.x >= 0):
            raise ConfigurationError(f"x must be >= 0, got {self.x}")

    def is_fkg_regime(self) -> bool:
        """Positive-association regime: ``n >= 1`` and
        ``n*x**2 <= exp(-|h_prime|)`` (tiny slack for boundary cases)."""
        return self.n >= 1.0 and \
            self.n * self.x * self.x <= math.exp(-abs(self.h_prime)) + 1e-12

    def key(self) -> tuple:
        return (self.n, self.x, self.h, self.h_prime)


@dataclass(frozen=True)
class DiluteParams:
    """Couplings of the occupation-state weight: ``q`` states, a chemical
    potential ``k1``, pair coupling ``k2`` and triangle coupling ``k3``."""

    q: int
    k1: float = 0.0
    k2: float = 0.0
    k3: float = 0.0

    def __post_init__(self):
        if self.q < 1:
            raise ConfigurationError("q must be a positive integer")


# -- boundary conditions ----------------------------------------------------

@dataclass(frozen=True)
class BoundaryCondition:
    """Fixed exterior-ring spins.

    Kinds: ``free`` (all -1), ``wired`` (all +1), ``explicit`` (a full map
    from ring faces to ±1), ``mixed`` (a sign per boundary arc; an exterior
    face adjacent to several arcs takes the sign of the first covering arc in
    the domain's arc order), and ``dobrushin`` (+1 on a cyclic index window
    of the canonical ring order, -1 elsewhere).
    """

    kind: str
    spins: tuple[tuple[Face, int], ...] = ()
    arcs: tuple[tuple[str, int], ...] = ()
    window: tuple[int, int] = (0, 0)

    @classmethod
    def free(cls) -> "BoundaryCondition":
        return cls("free")

    @classmethod
    def wired(cls) -> "BoundaryCondition":
        return cls("wired")

    @classmethod
    def explicit(cls, mapping: dict) -> "BoundaryCondition":
        items = tuple(sorted(((Face(*f), int(s)) for f, s in mapping.items()),
                             key=lambda t: (t[0].q, t[0].r)))
        return cls("explicit", spins=items)

    @classmethod
    def mixed(cls, arc_signs: dict) -> "BoundaryCondition":
        return cls("mixed", arcs=tuple(sorted((str(a), int(s))
                                              for a, s in arc_signs.items())))

    @classmethod
    def dobrushin(cls, start: int, end: int) -> "BoundaryCondition":
        return cls("dobrushin", window=(int(start), int(end)))

    def exterior_spins(self, domain: HexDomain) -> dict[Face, int]:
        """Resolve to a full ring-face -> ±1 map; raises
        :class:`ConfigurationError` if the ring is not exactly covered."""
        ring = domain.exterior_ring
        if self.kind == "free":
            return {f: -1 for f in ring}
        if self.kind == "wired":
            return {f: +1 for f in ring}
        if self.kind == "explicit":
            mapping = {f: s for f, s in self.spins}
            missing = [f for f in ring if f not in mapping]
            extra = [f for f in mapping if f not in set(ring)]
            if missing or extra:
                raise ConfigurationError(
                    f"explicit bc does not cover the exterior ring exactly "
                    f"({len(missing)} missing, {len(extra)} extra)")
            bad = [s for s in mapping.values() if s not in (-1, 1)]
            if bad:
                raise ConfigurationError("explicit bc spins must be ±1")
            return {f: mapping[f] for f in ring}
        if self.kind == "mixed":
            signs = dict(self.arcs)
            missing = [a for a in domain.arc_order if a not in signs]
            if missing:
                raise ConfigurationError(f"mixed bc missing arcs {missing}")
            arc_sets = {a: set(domain.boundary_arcs[a]) for a in domain.arc_order}
            out: dict[Face, int] = {}
            for f in ring:
                inner = [nb for nb in hexlat.neighbors(f) if domain.contains(nb)]
                sign = None
                for a in domain.arc_order:
                    if any(nb in arc_sets[a] for nb in inner):
                        sign = signs[a]
                        break
                if sign is None:
                    raise ConfigurationError(
                        f"ring face {f} not adjacent to any boundary arc")
                out[f] = sign
            return out
        if self.kind == "dobrushin":
            nring = len(ring)
            a, b = self.window
            if not (0 <= a < nring and 0 <= b <= nring):
                raise ConfigurationError("dobrushin window out of range")
            out = {}
            for i, f in enumerate(ring):
                inside = (a <= i < b) if a <= b else (i >= a or i < b)
                out[f] = +1 if inside else -1
            return out
        raise ConfigurationError(f"unknown bc kind {self.kind!r}")

    def leq(self, other: "BoundaryCondition", domain: HexDomain) -> bool:
        """Pointwise partial order on resolved ring spins."""
        a = self.exterior_spins(domain)
        b = other.exterior_spins(domain)
        return all(a[f] <= b[f] for f in a)

    def comparable(self, other: "BoundaryCondition", domain: HexDomain) -> bool:
        return self.leq(other, domain) or other.leq(self, domain)

    def key(self) -> tuple:
        return (self.kind, self.spins, self.arcs, self.window)

    def label(self) -> str:
        return self.kind


def dobrushin_fraction(domain: HexDomain, fraction: float,
                       offset: int = 0) -> BoundaryCondition:
    """+1 on the first ``ceil(fraction * ring)`` ring faces from ``offset``."""
    if not 0.0 <= fraction <= 1.0:
        raise ConfigurationError("fraction must be in [0, 1]")
    nring = len(domain.exterior_ring)
    span = math.ceil(fraction * nring)
    if span >= nring:
        return BoundaryCondition.dobrushin(0, nring)
    start = offset % nring
    return BoundaryCondition.dobrushin(start, (start + span) % nring)


# -- per-(domain, bc) context ------------------------------------------------

class _BcContext:
    """Fixed structures for one (domain, boundary condition) pair."""

    __slots__ = ("domain", "bc", "n", "total", "ring_signs", "base_state",
                 "ext_sign_sum")

    def __init__(self, domain: HexDomain, bc: BoundaryCondition):
        self.domain = domain
        self.bc = bc
        self.n = domain.n_faces
        ring = domain.exterior_ring
        self.total = self.n + len(ring)
        ext = bc.exterior_spins(domain)
        self.ring_signs = [ext[f] for f in ring]
        # state template: domain spins (mutable) followed by fixed ring signs
        self.base_state = [0] * self.n + self.ring_signs


_CTX_CACHE: dict[tuple, _BcContext] = {}


def _context(domain: HexDomain, bc: BoundaryCondition) -> _BcContext:
    key = (domain.domain_hash(), bc.key())
    ctx = _CTX_CACHE.get(key)
    if ctx is None or ctx.domain is not domain:
        ctx = _BcContext(domain, bc)
        _CTX_CACHE[key] = ctx
    return ctx


# -- spin configurations ------------------------------------------------------

class SpinConfig:
    """Mutable ±1 assignment on domain faces with cached statistics.

    The cached tuple ``(e, k, r, r_prime)`` is maintained incrementally under
    single-face updates; :meth:`recount` recomputes it from scratch and is the
    correctness oracle for the incremental path.
    """

    __slots__ = ("domain", "bc", "_state", "e", "k", "r", "r_prime", "_ctx")

    def __init__(self, domain: HexDomain, spins, bc: BoundaryCondition):
        self.domain = domain
        self.bc = bc
        self._ctx = _context(domain, bc)
        n = domain.n_faces
        spins = list(spins)
        if len(spins) != n:
            raise ConfigurationError(
                f"expected {n} spins, got {len(spins)}")
        if any(s not in (-1, 1) for s in spins):
            raise ConfigurationError("spins must be ±1")
        self._state = spins + self._ctx.ring_signs
        self.e = self.k = self.r = self.r_prime = 0
        self.recount()

    # constructors
    @classmethod
    def all_plus(cls, domain, bc) -> "SpinConfig":
        return cls(domain, [1] * domain.n_faces, bc)

    @classmethod
    def all_minus(cls, domain, bc) -> "SpinConfig":
        return cls(domain, [-1] * domain.n_faces, bc)

    @classmethod
    def random(cls, domain, bc, rng: np.random.Generator) -> "SpinConfig":
        bits = rng.integers(0, 2, size=domain.n_faces)
        return cls(domain, [1 if b else -1 for b in bits], bc)

    @property
    def spins(self) -> list[int]:
        """Domain spins in face order (a copy)."""
        return self._state[:self.domain.n_faces]

    def spin_at(self, i: int) -> int:
        return self._state[i]

    def stats(self) -> tuple[int, int, int, int]:
        return (self.e, self.k, self.r, self.r_prime)

    def copy(self) -> "SpinConfig":
        new = object.__new__(SpinConfig)
        new.domain, new.bc, new._ctx = self.domain, self.bc, self._ctx
        new._state = list(self._state)
        new.e, new.k, new.r, new.r_prime = self.e, self.k, self.r, self.r_prime
        return new

    # -- from-scratch statistics ---------------------------------------

    def recount(self) -> tuple[int, int, int, int]:
        """Recompute ``(e, k, r, r_prime)`` from scratch and refresh caches."""
        dom, st = self.domain, self._state
        n = dom.n_faces
        e = 0
        for i, j in dom.interior_edges:
            if st[i] != st[j]:
                e += 1
        for i, node in dom.boundary_edges:
            if st[i] != st[node]:
                e += 1
        self.e = e
        self.r = sum(st[:n])
        rp = 0
        for (a, b, c) in dom.triangles:
            sa = st[a]
            if sa == st[b] and sa == st[c]:
                rp += sa
        self.r_prime = rp
        self.k = self._recount_k()
        return self.stats()

    def _recount_k(self) -> int:
        """Constant-sign components of domain plus ring (union-find)."""
        st = self._state
        total = self._ctx.total
        parent = list(range(total))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        nbrs = self.domain.node_neighbors
        for u in range(total):
            su = st[u]
            for v in nbrs[u]:
                if v > u and st[v] == su:
                    ra, rb = find(u), find(v)
                    if ra != rb:
                        parent[ra] = rb
        return sum(1 for u in range(total) if find(u) == u)

    # -- incremental updates ---------------------------------------------

    def delta_stats(self, i: int, new_spin: int) -> tuple[int, int, int, int]:
        """``(de, dk, dr, dr_prime)`` for setting face ``i`` to ``new_spin``,
        without applying it."""
        st = self._state
        old = st[i]
        if new_spin == old:
            return (0, 0, 0, 0)
        dom = self.domain
        de = 0
        for w in dom.nbr_nodes[i]:
            if st[w] == old:
                de += 1
            elif st[w] == new_spin:
                de -= 1
        dr = new_spin - old
        drp = 0
        faces = dom.triangles
        for t in dom.face_triangles[i]:
            a, b, c = faces[t]
            if a == i:
                u, v = b, c
            elif b == i:
                u, v = a, c
            else:
                u, v = a, b
            if st[u] == st[v]:
                if st[u] == old:
                    drp -= old
                elif st[u] == new_spin:
                    drp += new_spin
        dk = self._delta_k(i, new_spin)
        return (de, dk, dr, drp)

    def _delta_k(self, i: int, new_spin: int) -> int:
        """Exact change in component count if face ``i`` takes ``new_spin``.

        Local case analysis on the 6-neighbour ring: contiguous same-sign runs
        are already connected pairwise, so a single run needs no search. Runs
        that might be joined (or split) through the rest of the graph are
        resolved by a budgeted BFS; on budget exhaustion we recount.
        """
        st = self._state
        old = st[i]
        ring = self.domain.nbr_nodes[i]
        # maximal cyclic runs of ring positions by spin value
        new_runs = _cyclic_runs(ring, st, new_spin)
        old_runs = _cyclic_runs(ring, st, old)

        budget = SPLIT_SEARCH_BUDGET
        if len(new_runs) <= 1:
            m = len(new_runs)
        else:
            m = self._count_classes([r[0] for r in new_runs], new_spin,
                                    avoid=-1, budget=budget)
            if m < 0:
                return self._delta_k_recount(i, new_spin)
        if not old_runs:
            split_term = -1
        elif len(old_runs) == 1:
            split_term = 0
        else:
            p = self._count_classes([r[0] for r in old_runs], old,
                                    avoid=i, budget=budget)
            if p < 0:
                return self._delta_k_recount(i, new_spin)
            split_term = p - 1
        return (1 - m) + split_term

    def _count_classes(self, seeds: list[int], sign: int, avoid: int,
                       budget: int) -> int:
        """Number of connected classes among ``seeds`` in the constant-sign
        subgraph of ``sign``, skipping node ``avoid``. Returns -1 when the
        search exceeds the budget."""
        st = self._state
        nbrs = self.domain.node_neighbors
        seed_set = set(seeds)
        visited: set[int] = set()
        classes = 0
        for s in seeds:
            if s in visited:
                continue
            classes += 1
            stack = [s]
            visited.add(s)
            while stack:
                u = stack.pop()
                budget -= 1
                if budget < 0:
                    return -1
                for v in nbrs[u]:
                    if v == avoid or v in visited or st[v] != sign:
                        continue
                    visited.add(v)
                    stack.append(v)
            if seed_set <= visited:
                break
        return classes

    def _delta_k_recount(self, i: int, new_spin: int) -> int:
        st = self._state
        old = st[i]
        st[i] = new_spin
        k_new = self._recount_k()
        st[i] = old
        return k_new - self.k

    def apply(self, i: int, new_spin: int,
              deltas: tuple[int, int, int, int] | None = None) -> None:
        """Set face ``i`` to ``new_spin``, updating caches."""
        if deltas is None:
            deltas = self.delta_stats(i, new_spin)
        de, dk, dr, drp = deltas
        self._state[i] = new_spin
        self.e += de
        self.k += dk
        self.r += dr
        self.r_prime += drp

    def flip(self, i: int) -> None:
        self.apply(i, -self._state[i])

    # -- serialization --------------------------------------------------

    def to_json(self) -> str:
        return json.dumps({"domain_hash": self.domain.domain_hash(),
                           "spins": self.spins}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, domain: HexDomain,
                  bc: BoundaryCondition) -> "SpinConfig":
        doc = json.loads(text)
        if doc["domain_hash"] != domain.domain_hash():
            raise ConfigurationError("config was saved for a different domain")
        return cls(domain, doc["spins"], bc)

    def to_bytes(self) -> bytes:
        bits = np.packbits([1 if s > 0 else 0 for s in self.spins])
        head = self.domain.domain_hash().encode()
        count = self.domain.n_faces.to_bytes(4, "big")
        return b"HXC1" + head + count + bits.tobytes()

    @classmethod
    def from_bytes(cls, blob: bytes, domain: HexDomain,
                   bc: BoundaryCondition) -> "SpinConfig":
        if blob[:4] != b"HXC1":
            raise ConfigurationError("bad config header")
        head = blob[4:20].decode()
        if head != domain.domain_hash():
            raise ConfigurationError("config was saved for a different domain")
        n = int.from_bytes(blob[20:24], "big")
        bits = np.unpackbits(np.frombuffer(blob[24:], dtype=np.uint8))[:n]
        return cls(domain, [1 if b else -1 for b in bits], bc)

    def __repr__(self) -> str:
        return (f"SpinConfig({self.domain.kind}, e={self.e}, k={self.k}, "
                f"r={self.r}, r'={self.r_prime})")


def _cyclic_runs(ring: tuple[int, ...], state: list[int],
                 sign: int) -> list[list[int]]:
    """Maximal cyclic runs of consecutive ring nodes carrying ``sign``."""
    n = len(ring)
    marks = [state[w] == sign for w in ring]
    if all(marks):
        return [list(ring)]
    runs: list[list[int]] = []
    idx = 0
    # start just after a gap so runs never wrap
    while marks[idx % n]:
        idx += 1
    for off in range(n):
        p = (idx + off) % n
        if marks[p]:
            if off > 0 and marks[(idx + off - 1) % n]:
                runs[-1].append(ring[p])
            else:
                runs.append([ring[p]])
    return runs


# -- weights -----------------------------------------------------------------

def spin_log_weight(config: SpinConfig, params: ModelParams,
                    bc: BoundaryCondition | None = None) -> float:
    """Log-weight of a spin configuration under its boundary condition.

    If ``bc`` differs from the configuration's bound boundary condition the
    statistics are recomputed under ``bc`` without touching the caches.
    """
    if bc is None or bc.key() == config.bc.key():
        e, k, r, rp = config.stats()
    else:
        e, k, r, rp = spin_stats(config.domain, config.spins, bc)
    return stats_log_weight(e, k, r, rp, params)


def stats_log_weight(e: int, k: int, r: int, rp: int,
                     params: ModelParams) -> float:
    if params.x == 0.0:
        if e > 0:
            return NEG_INF
        edge_term = 0.0
    else:
        edge_term = e * math.log(params.x)
    return (k * math.log(params.n) + edge_term
            + params.h * r + 0.5 * params.h_prime * rp)


def spin_stats(domain: HexDomain, spins, bc: BoundaryCondition
               ) -> tuple[int, int, int, int]:
    """From-scratch ``(e, k, r, r_prime)`` for a raw spin list."""
    return SpinConfig(domain, spins, bc).stats()


# -- loop configurations ------------------------------------------------------

class LoopConfig:
    """A set of hexagonal-lattice edges in which every vertex of the
    hexagonal graph has degree 0 or 2.

    The constraint is enforced at every vertex whose triangle of faces
    contains at least two domain faces (there all three incident edges belong
    to the domain edge list). At vertices sitting on the outer boundary an
    interface may legitimately terminate, continuing through exterior edges
    that the domain does not carry, so degree 1 is tolerated there.
    """

    __slots__ = ("domain", "edge_ids", "edges", "_vertex_ids")

    def __init__(self, domain: HexDomain, edge_ids):
        self.domain = domain
        all_edges = hexlat.dual_edges(domain)
        self.edge_ids = tuple(sorted(set(int(i) for i in edge_ids)))
        for i in self.edge_ids:
            if not 0 <= i < len(all_edges):
                raise ConfigurationError(f"edge id {i} out of range")
        self.edges = tuple(all_edges[i] for i in self.edge_ids)
        degree: dict[frozenset, int] = {}
        for edge in self.edges:
            for v in hexlat.edge_endpoints(edge):
                degree[v] = degree.get(v, 0) + 1
        bad = []
        for v, d in degree.items():
            interior = sum(1 for f in v if domain.contains(f)) >= 2
            if d > 2 or (d == 1 and interior):
                bad.append(v)
        if bad:
            raise ConfigurationError(
                f"{len(bad)} vertices violate the degree-0/2 constraint")
        self._vertex_ids = degree

    def __len__(self) -> int:
        return len(self.edge_ids)


def loop_count(config: LoopConfig) -> int:
    """Number of loops: connected components of the active edge set."""
    verts = list(config._vertex_ids)
    vid = {v: i for i, v in enumerate(verts)}
    parent = list(range(len(verts)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for edge in config.edges:
        a, b = hexlat.edge_endpoints(edge)
        ra, rb = find(vid[a]), find(vid[b])
        if ra != rb:
            parent[ra] = rb
    active = {find(vid[v]) for v, d in config._vertex_ids.items() if d > 0}
    return len(active)


def loop_count_cycle_space(config: LoopConfig) -> int:
    """Same count via the cycle-space dimension ``|E| - |V| + components`` of
    the active subgraph; agrees with :func:`loop_count` exactly when every
    component is a simple cycle."""
    active_vertices = {v for v, d in config._vertex_ids.items() if d > 0}
    comps = loop_count(config)
    return len(config.edges) - len(active_vertices) + comps


def loop_log_weight(config: LoopConfig, params: ModelParams) -> float:
    """Log of ``x**edges * n**loops``."""
    e = len(config.edges)
    if params.x == 0.0 and e > 0:
        return NEG_INF
    edge_term = e * math.log(params.x) if e else 0.0
    return edge_term + loop_count(config) * math.log(params.n)


def spins_to_loops(config: SpinConfig,
                   bc: BoundaryCondition | None = None) -> LoopConfig:
    """Interface edges of a spin configuration: the hexagonal edges whose two
    faces disagree (boundary edges against the exterior ring included).
    The degree-0/2 constraint holds automatically."""
    dom = config.domain
    if bc is not None and bc.key() != config.bc.key():
        config = SpinConfig(dom, config.spins, bc)
    st = config._state
    ids = []
    pos = 0
    for i, j in dom.interior_edges:
        if st[i] != st[j]:
            ids.append(pos)
        pos += 1
    for i, node in dom.boundary_edges:
        if st[i] != st[node]:
            ids.append(pos)
        pos += 1
    return LoopConfig(dom, ids)


# -- occupation states ---------------------------------------------------------

@dataclass(frozen=True)
class SiteGraph:
    """Plain site graph handed to the occupation-state weight: vertex count,
    undirected edges, and the 3-cliques that carry the triangle coupling."""

    n_sites: int
    edges: tuple[tuple[int, int], ...]
    triangles: tuple[tuple[int, int, int], ...] = ()

    @classmethod
    def from_domain(cls, domain: HexDomain) -> "SiteGraph":
        return cls(domain.n_faces, domain.interior_edges, domain.triangles)

    @classmethod
    def triangle(cls) -> "SiteGraph":
        return cls(3, ((0, 1), (0, 2), (1, 2)), ((0, 1, 2),))


@dataclass(frozen=True)
class DilutePottsConfig:
    """Occupation variables ``t in {0,1}`` plus a state label ``s in 1..q``
    per site (state labels of vacant sites are ignored)."""

    t: tuple[int, ...]
    s: tuple[int, ...]


def dilute_potts_log_weight(config: DilutePottsConfig, params: DiluteParams,
                            graph: SiteGraph) -> float:
    """Log-weight of an occupation state.

    Every edge whose two endpoints are both occupied with distinct state
    labels contributes a hard zero (``-inf``); otherwise the couplings
    ``k1``/``k2``/``k3`` weight occupied sites, occupied edges and fully
    occupied triangles.
    """
    t, s = config.t, config.s
    if len(t) != graph.n_sites or len(s) != graph.n_sites:
        raise ConfigurationError("config size does not match graph")
    if any(ti not in (0, 1) for ti in t):
        raise ConfigurationError("occupation variables must be 0/1")
    if any(not 1 <= si <= params.q for si in s):
        raise ConfigurationError(f"state labels must lie in 1..{params.q}")
    log_w = params.k1 * sum(t)
    for i, j in graph.edges:
        if t[i] and t[j]:
            if s[i] != s[j]:
                return NEG_INF
            log_w += params.k2
    for i, j, k in graph.triangles:
        if t[i] and t[j] and t[k]:
            log_w += params.k3
    return log_w


# -- closed-form helpers -------------------------------------------------------

def nienhuis_critical_x(n: float) -> float:
    """Conjecturally critical edge weight ``1/sqrt(2 + sqrt(2 - n))`` for
    loop weight ``0 <= n <= 2`` (``n = 2`` included as the closure value)."""
    if not 0.0 <= n <= 2.0:
        raise ConfigurationError(f"critical point formula needs 0 <= n <= 2, got {n}")
    return 1.0 / math.sqrt(2.0 + math.sqrt(2.0 - n))


def affine_crossing_bound(c0: float, v: float) -> float:
    """The increasing affine map ``v -> 1 - c0**(-c0) + c0**(-c0) * v`` used
    to convert a vertical-crossing bound into a horizontal one."""
    if not c0 > 0:
        raise ConfigurationError("c0 must be positive")
    scale = c0 ** (-c0)
    return 1.0 - scale + scale * v


def params_hash(params: ModelParams) -> str:
    return hashlib.sha256(repr(params.key()).encode()).hexdigest()[:12]
