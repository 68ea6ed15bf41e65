"""Lattice geometry: finite domains of hexagonal faces addressed by axial
coordinates, with labeled boundary arcs, adjacency structure and edge lists.

Conventions, fixed across the package:

* Faces are axial coordinates ``(q, r)`` in pointy-top orientation. The
  cartesian embedding is ``x = q + r/2``, ``y = r*sqrt(3)/2``, so constant
  ``r`` is a horizontal row. Face centers form a triangular lattice; every
  face has six neighbours and the direction ring is counterclockwise starting
  from ``(+1, 0)``.
* A regular hexagon of side ``j`` is the set of faces with
  ``max(|q|, |r|, |q+r|) <= j``, centered at the origin. Its six boundary
  arcs are labeled ``"1"`` .. ``"6"`` counterclockwise, ``"1"`` being the
  bottom row and ``"4"`` the top; corner faces belong to both adjacent arcs.
* A box of ``width x height`` is the parallelogram ``0 <= q < width``,
  ``0 <= r < height`` (row-major face order) with arcs ``Left``, ``Right``,
  ``Bottom``, ``Top``.
* The *exterior ring* of a domain is the set of outside faces adjacent to at
  least one domain face, listed in a canonical order (by angle around the
  domain centroid). Boundary conditions assign fixed spins to the ring.
* Lattice edges of the hexagonal graph are identified with unordered pairs of
  adjacent faces; edges on the domain boundary pair an interior face with the
  exterior face behind them. The two endpoints of an edge (vertices of the
  hexagonal graph) are the two triangles of mutually adjacent faces that
  contain the pair.
"""

from __future__ import annotations

import hashlib
import json
import math
from typing import Iterable, NamedTuple


class Face(NamedTuple):
    """Axial coordinate of one hexagonal face / triangular-lattice site."""

    q: int
    r: int


#: CCW direction ring starting at angle 0 in the cartesian embedding.
DIRECTIONS = (Face(1, 0), Face(0, 1), Face(-1, 1),
              Face(-1, 0), Face(0, -1), Face(1, -1))


def neighbors(face: Face) -> tuple[Face, ...]:
    """The six neighbours of ``face`` in CCW direction order."""
    q, r = face
    return tuple(Face(q + dq, r + dr) for dq, dr in DIRECTIONS)


def face_xy(face: Face) -> tuple[float, float]:
    """Cartesian embedding of a face center."""
    q, r = face
    return (q + 0.5 * r, r * (math.sqrt(3.0) / 2.0))


def hex_norm(face: Face) -> int:
    """Hexagonal distance from the origin."""
    q, r = face
    return max(abs(q), abs(r), abs(q + r))


class HexDomain:
    """An immutable finite set of faces with labeled boundary arcs.

    Adjacency structure (face neighbours, exterior ring, node graph over
    domain plus ring, in-domain triangles, edge lists) is precomputed at
    construction. Do not mutate any attribute.
    """

    __slots__ = ("kind", "params", "faces", "boundary_arcs", "n_faces",
                 "_index", "neighbors_idx", "ext_neighbors", "exterior_ring",
                 "_ring_index", "node_neighbors", "nbr_nodes",
                 "interior_edges", "boundary_edges", "triangles",
                 "face_triangles", "arc_order", "_hash")

    def __init__(self, kind: str, params: dict, faces: Iterable[Face],
                 boundary_arcs: dict[str, tuple[Face, ...]]):
        self.kind = kind
        self.params = dict(params)
        self.faces = tuple(Face(*f) for f in faces)
        self.n_faces = len(self.faces)
        if self.n_faces == 0:
            raise ValueError("empty domain")
        self._index = {f: i for i, f in enumerate(self.faces)}
        if len(self._index) != self.n_faces:
            raise ValueError("duplicate faces in domain")
        self.boundary_arcs = {a: tuple(Face(*f) for f in fs)
                              for a, fs in boundary_arcs.items()}
        self.arc_order = tuple(self.boundary_arcs)
        for arc, fs in self.boundary_arcs.items():
            for f in fs:
                if f not in self._index:
                    raise ValueError(f"arc {arc!r} face {f} not in domain")
        self._build_adjacency()
        self._hash = None

    def __reduce__(self):
        return (HexDomain, (self.kind, self.params, self.faces,
                            self.boundary_arcs))

    # -- construction helpers -------------------------------------------

    def _build_adjacency(self) -> None:
        index = self._index
        nbr_idx, ext_nbr = [], []
        ring_seen: dict[Face, None] = {}
        for f in self.faces:
            ins, outs = [], []
            for nb in neighbors(f):
                if nb in index:
                    ins.append(index[nb])
                else:
                    outs.append(nb)
                    ring_seen.setdefault(nb, None)
            nbr_idx.append(tuple(ins))
            ext_nbr.append(tuple(outs))
        self.neighbors_idx = tuple(nbr_idx)
        self.ext_neighbors = tuple(ext_nbr)

        # canonical ring order: angle around the centroid, ties by coordinate
        xs = [face_xy(f) for f in self.faces]
        cx = sum(p[0] for p in xs) / len(xs)
        cy = sum(p[1] for p in xs) / len(xs)

        def ring_key(f: Face):
            x, y = face_xy(f)
            return (math.atan2(y - cy, x - cx), f.q, f.r)

        self.exterior_ring = tuple(sorted(ring_seen, key=ring_key))
        self._ring_index = {f: i for i, f in enumerate(self.exterior_ring)}

        # node graph over domain faces (ids 0..N-1) plus ring faces (N..N+R-1)
        n = self.n_faces
        node_of: dict[Face, int] = dict(self._index)
        for i, f in enumerate(self.exterior_ring):
            node_of[f] = n + i
        node_nbrs: list[list[int]] = [[] for _ in range(n + len(self.exterior_ring))]
        all_nodes = list(self.faces) + list(self.exterior_ring)
        for u, f in enumerate(all_nodes):
            for nb in neighbors(f):
                v = node_of.get(nb)
                if v is not None:
                    node_nbrs[u].append(v)
        self.node_neighbors = tuple(tuple(v) for v in node_nbrs)
        # per domain face: node id in each of the 6 CCW directions
        ring6 = []
        for f in self.faces:
            ring6.append(tuple(node_of[nb] for nb in neighbors(f)))
        self.nbr_nodes = tuple(ring6)

        interior, boundary = [], []
        for i, f in enumerate(self.faces):
            for nb in neighbors(f):
                j = node_of.get(nb)
                if j is None:  # unreachable: every exterior neighbour is ring
                    continue
                if j < n:
                    if i < j:
                        interior.append((i, j))
                else:
                    boundary.append((i, j))
        self.interior_edges = tuple(interior)
        self.boundary_edges = tuple(boundary)

        # in-domain triangles {u, v, w} of mutually adjacent faces
        tris: list[tuple[int, int, int]] = []
        for i, f in enumerate(self.faces):
            for t in range(6):
                a = Face(f.q + DIRECTIONS[t].q, f.r + DIRECTIONS[t].r)
                b_dir = DIRECTIONS[(t + 1) % 6]
                b = Face(f.q + b_dir.q, f.r + b_dir.r)
                ia, ib = self._index.get(a), self._index.get(b)
                if ia is not None and ib is not None and i < ia and i < ib:
                    tri = tuple(sorted((i, ia, ib)))
                    tris.append(tri)  # each listed twice; dedupe below
        self.triangles = tuple(sorted(set(tris)))
        ft: list[list[int]] = [[] for _ in range(self.n_faces)]
        for t, tri in enumerate(self.triangles):
            for i in tri:
                ft[i].append(t)
        self.face_triangles = tuple(tuple(v) for v in ft)

    # -- queries ---------------------------------------------------------

    def index(self, face: Face) -> int:
        return self._index[Face(*face)]

    def contains(self, face: Face) -> bool:
        return Face(*face) in self._index

    def ring_node(self, face: Face) -> int:
        """Node id of an exterior-ring face."""
        return self.n_faces + self._ring_index[Face(*face)]

    @property
    def boundary_faces(self) -> tuple[Face, ...]:
        return tuple(f for i, f in enumerate(self.faces) if self.ext_neighbors[i])

    def arc_faces(self, arc: str) -> tuple[Face, ...]:
        return self.boundary_arcs[arc]

    def translate(self, dq: int, dr: int) -> "HexDomain":
        """A copy of the domain shifted by ``(dq, dr)`` in axial coordinates."""
        shift = lambda f: Face(f.q + dq, f.r + dr)
        params = dict(self.params)
        off = params.get("offset", (0, 0))
        params["offset"] = (off[0] + dq, off[1] + dr)
        return HexDomain(self.kind, params,
                         [shift(f) for f in self.faces],
                         {a: tuple(shift(f) for f in fs)
                          for a, fs in self.boundary_arcs.items()})

    # -- serialization ---------------------------------------------------

    def to_json(self) -> str:
        doc = {"kind": self.kind,
               "params": {k: list(v) if isinstance(v, tuple) else v
                          for k, v in self.params.items()},
               "faces": [[f.q, f.r] for f in self.faces],
               "boundary_arcs": {a: [[f.q, f.r] for f in fs]
                                 for a, fs in self.boundary_arcs.items()}}
        return json.dumps(doc, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "HexDomain":
        doc = json.loads(text)
        params = {k: tuple(v) if isinstance(v, list) else v
                  for k, v in doc["params"].items()}
        return cls(doc["kind"], params,
                   [Face(*f) for f in doc["faces"]],
                   {a: tuple(Face(*f) for f in fs)
                    for a, fs in doc["boundary_arcs"].items()})

    def domain_hash(self) -> str:
        """Stable identity for caching and config headers."""
        if self._hash is None:
            payload = json.dumps(
                {"kind": self.kind, "faces": sorted([f.q, f.r] for f in self.faces)},
                sort_keys=True).encode()
            self._hash = hashlib.sha256(payload).hexdigest()[:16]
        return self._hash

    def __repr__(self) -> str:
        return f"HexDomain({self.kind}, {self.params}, {self.n_faces} faces)"


# -- builders -------------------------------------------------------------

def build_regular_hexagon(side: int) -> HexDomain:
    """Regular hexagon of the given side, centered at the origin.

    Contains ``3*side**2 + 3*side + 1`` faces. Arcs "1".."6" run CCW from the
    bottom row; consecutive arcs share their corner face.
    """
    if side < 1:
        raise ValueError("side must be >= 1")
    j = side
    faces = sorted((Face(q, r) for q in range(-j, j + 1)
                    for r in range(-j, j + 1) if abs(q + r) <= j),
                   key=lambda f: (f.r, f.q))
    arcs = {
        "1": tuple(Face(q, -j) for q in range(0, j + 1)),
        "2": tuple(Face(j, r) for r in range(-j, 1)),
        "3": tuple(Face(j - r, r) for r in range(0, j + 1)),
        "4": tuple(Face(q, j) for q in range(0, -j - 1, -1)),
        "5": tuple(Face(-j, r) for r in range(j, -1, -1)),
        "6": tuple(Face(-j - r, r) for r in range(0, -j - 1, -1)),
    }
    return HexDomain("RegularHexagon", {"side": j}, faces, arcs)


def build_hex_box(width: int, height: int) -> HexDomain:
    """Parallelogram of ``width`` columns by ``height`` rows, row-major order."""
    if width < 1 or height < 1:
        raise ValueError("box dimensions must be >= 1")
    faces = [Face(q, r) for r in range(height) for q in range(width)]
    arcs = {
        "Left": tuple(Face(0, r) for r in range(height)),
        "Right": tuple(Face(width - 1, r) for r in range(height)),
        "Bottom": tuple(Face(q, 0) for q in range(width)),
        "Top": tuple(Face(q, height - 1) for q in range(width)),
    }
    return HexDomain("HexBox", {"width": width, "height": height}, faces, arcs)


def build_strip(width: int, length: int) -> HexDomain:
    """Vertical strip piece: ``width`` columns by ``length`` rows."""
    box = build_hex_box(width, length)
    return HexDomain("Strip", {"T": width, "L": length},
                     box.faces, box.boundary_arcs)


def build_annulus(side: int, delta: int) -> HexDomain:
    """Faces of the side ``side + delta`` hexagon minus the side ``side`` one.

    Arcs: ``Inner`` = faces adjacent to the removed hexagon, ``Outer`` = faces
    at hexagonal distance ``side + delta``. A face may carry both tags.
    """
    if side < 1 or delta < 1:
        raise ValueError("side and delta must be >= 1")
    outer = build_regular_hexagon(side + delta)
    removed = {f for f in build_regular_hexagon(side).faces}
    faces = [f for f in outer.faces if f not in removed]
    face_set = set(faces)
    inner_arc = tuple(f for f in faces
                      if any(nb in removed for nb in neighbors(f)))
    outer_arc = tuple(f for f in faces if hex_norm(f) == side + delta)
    dom = HexDomain("Annulus", {"side": side, "delta": delta}, faces,
                    {"Inner": inner_arc, "Outer": outer_arc})
    assert face_set == set(dom.faces)
    return dom


def custom_domain(faces: Iterable[Face], kind: str = "Custom") -> HexDomain:
    """Arbitrary face set; the single arc ``Boundary`` holds every face with
    an exterior neighbour."""
    faces = sorted({Face(*f) for f in faces}, key=lambda f: (f.r, f.q))
    face_set = set(faces)
    boundary = tuple(f for f in faces
                     if any(nb not in face_set for nb in neighbors(f)))
    return HexDomain(kind, {}, faces, {"Boundary": boundary})


def union_domain(domains: Iterable[HexDomain], kind: str = "Union") -> HexDomain:
    """Union of the face sets of several domains, as a custom domain."""
    faces: set[Face] = set()
    for d in domains:
        faces.update(d.faces)
    return custom_domain(faces, kind=kind)


# -- edges and partitions --------------------------------------------------

def dual_edges(domain: HexDomain) -> tuple[tuple[Face, Face], ...]:
    """All hexagonal-lattice edges incident to the domain.

    Each edge is the pair of faces it separates; the first face is always in
    the domain, the second may be an exterior-ring face. Interior edges are
    listed once.
    """
    out: list[tuple[Face, Face]] = []
    for i, j in domain.interior_edges:
        out.append((domain.faces[i], domain.faces[j]))
    for i, node in domain.boundary_edges:
        out.append((domain.faces[i],
                    domain.exterior_ring[node - domain.n_faces]))
    return tuple(out)


def edge_endpoints(edge: tuple[Face, Face]) -> tuple[frozenset, frozenset]:
    """The two hexagonal-graph vertices of an edge, each given as the triangle
    of three mutually adjacent faces containing it."""
    a, b = Face(*edge[0]), Face(*edge[1])
    d = Face(b.q - a.q, b.r - a.r)
    t = DIRECTIONS.index(d)
    c1 = Face(a.q + DIRECTIONS[(t - 1) % 6].q, a.r + DIRECTIONS[(t - 1) % 6].r)
    c2 = Face(a.q + DIRECTIONS[(t + 1) % 6].q, a.r + DIRECTIONS[(t + 1) % 6].r)
    return frozenset((a, b, c1)), frozenset((a, b, c2))


def partition_arc(arc_faces: tuple[Face, ...], k: int) -> list[tuple[Face, ...]]:
    """Split an arc's face list into ``k`` contiguous runs whose lengths
    differ by at most one."""
    m = len(arc_faces)
    if not 1 <= k <= m:
        raise ValueError(f"cannot split {m} faces into {k} cells")
    return [tuple(arc_faces[(i * m) // k:((i + 1) * m) // k]) for i in range(k)]
