"""Connectivity events: crossings between boundary arcs, multi-arm events on
translated hexagon families, and component-volume observables.

A crossing event asks for a path of constant-spin faces, each face adjacent
to the next (6-adjacency of the triangular sites), that stays inside a region
and joins a source face set to a target face set. Because both signs use the
same adjacency, every box configuration has exactly one of: a ``+`` path
Left -> Right, or a ``-`` path Bottom -> Top; the complement of a vertical
crossing is therefore itself a crossing event of the opposite sign.

Connectivity queries are answered by union-find with path compression,
rebuilt per query; nothing incremental is kept across sampler steps.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

from . import hexlat
from .errors import ConfigurationError
from .hexlat import Face, HexDomain


class UnionFind:
    """Array-backed disjoint sets with path compression and union by size."""

    __slots__ = ("parent", "size")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, i: int) -> int:
        parent = self.parent
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]


@dataclass(frozen=True)
class CrossingEvent:
    """Existence of a constant-``spin`` path from ``source`` to ``target``
    inside ``region`` (face sets given by coordinates)."""

    source: frozenset
    target: frozenset
    region: frozenset
    spin: int
    name: str = ""

    def __post_init__(self):
        if self.spin not in (-1, 1):
            raise ConfigurationError("event spin must be ±1")
        for f in self.source | self.target:
            if f not in self.region:
                raise ConfigurationError(
                    "source/target faces must lie inside the region")

    def key(self) -> str:
        payload = json.dumps({
            "source": sorted([f.q, f.r] for f in self.source),
            "target": sorted([f.q, f.r] for f in self.target),
            "region": sorted([f.q, f.r] for f in self.region),
            "spin": self.spin}, sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def to_json(self, domain: HexDomain) -> str:
        """Face-index form relative to ``domain``."""
        return json.dumps({
            "source": sorted(domain.index(f) for f in self.source),
            "target": sorted(domain.index(f) for f in self.target),
            "region": sorted(domain.index(f) for f in self.region),
            "spin": self.spin, "name": self.name}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str, domain: HexDomain) -> "CrossingEvent":
        doc = json.loads(text)
        faces = domain.faces
        return cls(frozenset(faces[i] for i in doc["source"]),
                   frozenset(faces[i] for i in doc["target"]),
                   frozenset(faces[i] for i in doc["region"]),
                   doc["spin"], doc.get("name", ""))


def connected(config, event: CrossingEvent) -> bool:
    """Evaluate the event on a configuration (anything exposing ``.domain``
    and per-face spins)."""
    spins = getattr(config, "_state", None)
    if spins is None:
        spins = config.spins
    return connected_spins(config.domain, spins, event)


def connected_spins(domain: HexDomain, spins, event: CrossingEvent) -> bool:
    """Evaluate the event on a raw spin sequence in ``domain`` face order.

    Region faces missing from the domain are simply absent from the support;
    the event is false when no target face is available.
    """
    idx = domain._index
    want = event.spin
    cells = [i for f in event.region
             if (i := idx.get(f)) is not None and spins[i] == want]
    if not cells:
        return False
    local = {i: t for t, i in enumerate(cells)}
    uf = UnionFind(len(cells))
    nbrs = domain.neighbors_idx
    for i in cells:
        a = local[i]
        for v in nbrs[i]:
            b = local.get(v)
            if b is not None:
                uf.union(a, b)
    src_roots = {uf.find(local[i]) for f in event.source
                 if (i := idx.get(f)) is not None and i in local}
    if not src_roots:
        return False
    for f in event.target:
        i = idx.get(f)
        if i is not None and i in local and uf.find(local[i]) in src_roots:
            return True
    return False


# -- standard crossings ------------------------------------------------------

def horizontal_crossing(domain: HexDomain, spin: int = 1) -> CrossingEvent:
    """Left-right crossing: boxes join ``Left`` to ``Right``; regular
    hexagons join arcs {2,3} to arcs {5,6}."""
    region = frozenset(domain.faces)
    if domain.kind in ("HexBox", "Strip"):
        return CrossingEvent(frozenset(domain.arc_faces("Left")),
                             frozenset(domain.arc_faces("Right")),
                             region, spin, name="horizontal")
    if domain.kind == "RegularHexagon":
        right = frozenset(domain.arc_faces("2")) | frozenset(domain.arc_faces("3"))
        left = frozenset(domain.arc_faces("5")) | frozenset(domain.arc_faces("6"))
        return CrossingEvent(right, left, region, spin, name="horizontal")
    raise ConfigurationError(
        f"horizontal crossing undefined for domain kind {domain.kind!r}")


def vertical_crossing(domain: HexDomain, spin: int = 1) -> CrossingEvent:
    """Bottom-top crossing: boxes join ``Bottom`` to ``Top``; regular
    hexagons join arc 1 to arc 4."""
    region = frozenset(domain.faces)
    if domain.kind in ("HexBox", "Strip"):
        return CrossingEvent(frozenset(domain.arc_faces("Bottom")),
                             frozenset(domain.arc_faces("Top")),
                             region, spin, name="vertical")
    if domain.kind == "RegularHexagon":
        return CrossingEvent(frozenset(domain.arc_faces("1")),
                             frozenset(domain.arc_faces("4")),
                             region, spin, name="vertical")
    raise ConfigurationError(
        f"vertical crossing undefined for domain kind {domain.kind!r}")


def vertical_blocking(domain: HexDomain) -> CrossingEvent:
    """The ``-`` path Bottom -> Top whose occurrence excludes every ``+``
    Left -> Right path (its indicator is exactly ``1 - horizontal``)."""
    ev = vertical_crossing(domain, spin=-1)
    return CrossingEvent(ev.source, ev.target, ev.region, -1,
                         name="vertical-blocking")


def face_event(domain: HexDomain, face, spin: int = 1) -> CrossingEvent:
    """Single-face event: the face carries ``spin``."""
    f = Face(*face)
    return CrossingEvent(frozenset([f]), frozenset([f]), frozenset([f]),
                         spin, name=f"face({f.q},{f.r})")


def connectivity_event(domain: HexDomain, a, b, spin: int = 1) -> CrossingEvent:
    """Two marked faces joined by a constant-spin path anywhere in the
    domain."""
    fa, fb = Face(*a), Face(*b)
    return CrossingEvent(frozenset([fa]), frozenset([fb]),
                         frozenset(domain.faces), spin,
                         name=f"connect({fa.q},{fa.r})-({fb.q},{fb.r})")


def center_to_boundary(domain: HexDomain, spin: int = 1) -> CrossingEvent:
    """Center face joined to any face having an exterior neighbour."""
    center = Face(0, 0) if domain.contains(Face(0, 0)) else domain.faces[0]
    return CrossingEvent(frozenset([center]),
                         frozenset(domain.boundary_faces),
                         frozenset(domain.faces), spin, name="center-boundary")


def canonical_increasing_events(domain: HexDomain) -> list[CrossingEvent]:
    """Standard increasing-event battery for the verification suites: a
    single-face event, both crossings, and a corner-to-corner connectivity
    event."""
    mid = domain.faces[domain.n_faces // 2]
    return [face_event(domain, mid),
            horizontal_crossing(domain),
            vertical_crossing(domain),
            connectivity_event(domain, domain.faces[0], domain.faces[-1])]


# -- multi-arm families on translated hexagons --------------------------------

@dataclass(eq=False)
class ArmEvents:
    """Arm events from one bottom-arc cell of a regular hexagon, plus the
    translated copies used to express them.

    ``base`` maps labels "2".."6" to crossing events; "4" stays inside the
    central hexagon while "2"/"3" target arcs of the left translate and
    "5"/"6" arcs of the right translate, evaluated inside the union of the
    three copies. ``primed`` maps labels to (event, subtracted-event) pairs
    realizing a set difference: the primed event holds when the first occurs
    and the second does not.
    """

    side: int
    delta_prime: int
    cells: int
    cell: int
    source: frozenset
    base: dict
    primed: dict
    left: HexDomain
    center: HexDomain
    right: HexDomain
    region: frozenset


def arm_events(side: int, delta_prime: int, cells: int = 1,
               cell: int = 0) -> ArmEvents:
    """Build the five arm events for one bottom-arc partition cell.

    ``delta_prime`` is the horizontal translation distance between
    consecutive hexagon copies; ``cells`` is the number of partition cells
    of the bottom arc (length side+1, so ``cells`` may not exceed it).
    """
    if not 1 <= delta_prime <= side:
        raise ConfigurationError("translation must be in 1..side")
    center = hexlat.build_regular_hexagon(side)
    bottom = center.arc_faces("1")
    if not 1 <= cells <= len(bottom):
        raise ConfigurationError(
            f"partition count must be in 1..{len(bottom)}")
    if not 0 <= cell < cells:
        raise ConfigurationError("cell index out of range")
    left = center.translate(-delta_prime, 0)
    right = center.translate(delta_prime, 0)
    region = (frozenset(left.faces) | frozenset(center.faces)
              | frozenset(right.faces))
    source = frozenset(hexlat.partition_arc(bottom, cells)[cell])

    def ev(target_faces, reg, label):
        return CrossingEvent(source, frozenset(target_faces), reg, +1,
                             name=f"arm{label}[{cell}]")

    base = {
        "2": ev(left.arc_faces("2"), region, "2"),
        "3": ev(left.arc_faces("3"), region, "3"),
        "4": ev(center.arc_faces("4"), frozenset(center.faces), "4"),
        "5": ev(right.arc_faces("5"), region, "5"),
        "6": ev(right.arc_faces("6"), region, "6"),
    }
    primed = {
        "2": (ev(right.arc_faces("2"), region, "2'"), base["2"]),
        "3": (ev(right.arc_faces("3"), region, "3'"), base["3"]),
        "5": (ev(left.arc_faces("5"), region, "5'"), base["5"]),
        "6": (ev(left.arc_faces("6"), region, "6'"), base["6"]),
    }
    return ArmEvents(side=side, delta_prime=delta_prime, cells=cells,
                     cell=cell, source=source, base=base, primed=primed,
                     left=left, center=center, right=right, region=region)


def six_arm_events(side: int, delta_prime: int, cells: int = 1) -> list:
    """Flat event list over all bottom-arc partition cells: for each cell,
    the five base events (targets on arcs 2..6 of the translated copies)
    followed by the four primed (event, minus-event) pairs."""
    out: list = []
    for cell in range(cells):
        fam = arm_events(side, delta_prime, cells, cell)
        out.extend(fam.base[a] for a in ("2", "3", "4", "5", "6"))
        out.extend(fam.primed[a] for a in ("2", "3", "5", "6"))
    return out


def chain_event(side: int, delta_prime: int, cells: int = 1,
                cell: int = 0) -> CrossingEvent:
    """Cell-to-translated-cells event: the cell of the central copy joins
    the matching cells of the next two translates, inside the union of the
    three copies."""
    center = hexlat.build_regular_hexagon(side)
    right1 = center.translate(delta_prime, 0)
    right2 = center.translate(2 * delta_prime, 0)
    region = (frozenset(center.faces) | frozenset(right1.faces)
              | frozenset(right2.faces))
    src = frozenset(
        hexlat.partition_arc(center.arc_faces("1"), cells)[cell])
    tgt = (frozenset(hexlat.partition_arc(right1.arc_faces("1"), cells)[cell])
           | frozenset(hexlat.partition_arc(right2.arc_faces("1"), cells)[cell]))
    return CrossingEvent(src, tgt, region, +1, name=f"chain[{cell}]")


def boundary_exit_event(side: int) -> CrossingEvent:
    """Bottom arc joined to any other-arc face of the same hexagon: the
    union of the five arm targets must cover this event."""
    center = hexlat.build_regular_hexagon(side)
    bottom = set(center.arc_faces("1"))
    others = set()
    for arc in ("2", "3", "4", "5", "6"):
        others.update(center.arc_faces(arc))
    others -= bottom
    return CrossingEvent(frozenset(bottom), frozenset(others),
                         frozenset(center.faces), +1, name="boundary-exit")


# -- component volumes ---------------------------------------------------------

def component_volumes(config, annulus: HexDomain, spin: int = 1) -> list[int]:
    """Sizes of the maximal constant-``spin`` components intersected with
    the annulus face set, in decreasing order.

    Components are maximal in the configuration's own domain; each component
    meeting the annulus contributes one entry, the count of its faces that
    lie inside the annulus. Constant opposite spin gives an empty list.
    """
    domain = config.domain
    spins = getattr(config, "_state", None)
    if spins is None:
        spins = config.spins
    n = domain.n_faces
    uf = UnionFind(n)
    nbrs = domain.neighbors_idx
    for i in range(n):
        if spins[i] != spin:
            continue
        for v in nbrs[i]:
            if v > i and spins[v] == spin:
                uf.union(i, v)
    idx = domain._index
    counts: dict[int, int] = {}
    for f in annulus.faces:
        i = idx.get(f)
        if i is not None and spins[i] == spin:
            root = uf.find(i)
            counts[root] = counts.get(root, 0) + 1
    return sorted(counts.values(), reverse=True)
