"""Rotation systems, face tracing, planarity and outerplanarity, cycle sides.

A rotation system assigns each vertex a cyclic order of its half-edges and
determines a surface via face tracing.  On a genus-zero tracing every cycle
splits the traced faces into exactly two sides, which gives a combinatorial
notion of cycle interiors.  Two cycles cross when no side of one is contained
in a side of the other; this is independent of which face is declared outer.

Non-crossing lemma: if no pair of cycles in a family crosses, then for any
choice of outer face the interiors (the sides avoiding the outer face) form a
laminar family.  Proof sketch: with outer face o, interior(c) is the side of
c not containing o.  Given cycles c1, c2 with sides (A, A') and (B, B'),
non-crossing gives a containment, say A <= B.  Whichever sides play the role
of interiors, A <= B forces int(c1) and int(c2) to be nested or disjoint:
if int(c1) = A and int(c2) = B they are nested; if int(c2) = B' then
int(c1) = A is disjoint from B'; if int(c1) = A' then o in A <= B so
int(c2) = B', and A' >= B' follows from A <= B.  This is exercised by tests
over every outer-face choice.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .complexes import Graph, HalfEdge

# A dart traverses an edge away from endpoint o: same encoding as a half-edge.
Dart = tuple[str, int]


class RotationSystem:
    """A cyclic order of half-edges at every vertex of a graph."""

    def __init__(self, rotators: Mapping[str, Sequence[HalfEdge]]):
        self._rot: dict[str, tuple[HalfEdge, ...]] = {}
        for v in sorted(rotators):
            self._rot[v] = _normalize_cycle(tuple(rotators[v]))
        self._succ: dict[str, dict[HalfEdge, HalfEdge]] = {}
        for v, cyc in self._rot.items():
            self._succ[v] = {h: cyc[(i + 1) % len(cyc)] for i, h in enumerate(cyc)}

    def vertices(self) -> tuple[str, ...]:
        return tuple(self._rot)

    def rotator(self, v: str) -> tuple[HalfEdge, ...]:
        return self._rot[v]

    def successor(self, v: str, h: HalfEdge) -> HalfEdge:
        return self._succ[v][h]

    def validate_for(self, graph: Graph) -> None:
        if set(self._rot) != set(graph.vertices):
            raise ValueError("rotation system does not cover the vertex set")
        for v in graph.vertices:
            if tuple(sorted(self._rot[v])) != graph.half_edges_at(v):
                raise ValueError(f"rotator at {v} does not list the half-edges at {v}")

    def canonical_key(self) -> tuple:
        return tuple(self._rot.items())

    def restricted_to(self, vertices: Iterable[str]) -> "RotationSystem":
        vs = set(vertices)
        return RotationSystem({v: r for v, r in self._rot.items() if v in vs})

    def __eq__(self, other) -> bool:
        return isinstance(other, RotationSystem) and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return f"RotationSystem({len(self._rot)} rotators)"


def _normalize_cycle(cyc: tuple) -> tuple:
    """Rotate a cyclic sequence to start at its minimal element."""
    if not cyc:
        return cyc
    i = cyc.index(min(cyc))
    return cyc[i:] + cyc[:i]


class TracedFaces:
    """Face-tracing orbits of a rotation system on a connected graph."""

    def __init__(self, graph: Graph, rotation: RotationSystem):
        if not graph.is_connected():
            raise ValueError("face tracing requires a connected graph")
        rotation.validate_for(graph)
        self.graph = graph
        self.rotation = rotation
        self.orbits = _trace_orbits(graph, rotation)
        self._orbit_of: dict[Dart, int] = {}
        for i, orbit in enumerate(self.orbits):
            for d in orbit:
                self._orbit_of[d] = i
        self._side_cache: dict[frozenset[str], tuple[frozenset[int], frozenset[int]]] = {}

    @property
    def genus(self) -> int:
        v = len(self.graph.vertices)
        e = len(self.graph.edges)
        f = len(self.orbits)
        if e == 0:
            return 0
        two_g = 2 - v + e - f
        if two_g < 0 or two_g % 2:
            raise AssertionError(f"inconsistent Euler count: V={v} E={e} F={f}")
        return two_g // 2

    def orbit_index_of(self, dart: Dart) -> int:
        return self._orbit_of[dart]

    def outer_face_index(self) -> int:
        """The designated outer face: the first traced orbit."""
        return 0

    def __repr__(self) -> str:
        return f"TracedFaces({len(self.orbits)} orbits, genus {self.genus})"


def _trace_orbits(graph: Graph, rotation: RotationSystem) -> tuple[tuple[Dart, ...], ...]:
    darts: list[Dart] = []
    for eid in sorted(graph.edges):
        darts.append((eid, 0))
        darts.append((eid, 1))
    seen: set[Dart] = set()
    orbits: list[tuple[Dart, ...]] = []
    for start in darts:
        if start in seen:
            continue
        orbit = []
        d = start
        while True:
            orbit.append(d)
            seen.add(d)
            eid, o = d
            head = graph.endpoints(eid)[1 - o]
            d = rotation.successor(head, (eid, 1 - o))
            if d == start:
                break
        orbits.append(tuple(orbit))
    return tuple(orbits)


def trace_faces(graph: Graph, rotation: RotationSystem) -> TracedFaces:
    """Trace the face orbits of a rotation system; genus via the Euler count."""
    return TracedFaces(graph, rotation)


class NonPlanarityReport:
    """Evidence of non-planarity: a subdivided Kuratowski subgraph."""

    def __init__(self, component: frozenset[str], subgraph_edges: tuple[tuple[str, str], ...]):
        self.component = component
        self.subgraph_edges = subgraph_edges

    def __repr__(self) -> str:
        return f"NonPlanarityReport({len(self.component)} vertices)"


class PlanarityResult:
    def __init__(self, rotation: RotationSystem | None, report: NonPlanarityReport | None):
        self.rotation = rotation
        self.report = report

    @property
    def is_planar(self) -> bool:
        return self.rotation is not None


def test_planar(graph: Graph) -> PlanarityResult:
    """Planarity with an embedding: a rotation system tracing to genus zero.

    Handles disconnected input per component and multigraphs: parallel edges
    are laid next to their partner and loops next to themselves, which keeps
    the genus at zero.  Deterministic for a fixed input.
    """
    rotators: dict[str, tuple[HalfEdge, ...]] = {}
    for comp in graph.components():
        sub = graph.induced_subgraph(comp)
        comp_rot = _planar_rotators_connected(sub)
        if comp_rot is None:
            nxg = _to_nx_simple(sub)
            _, counter = nx.check_planarity(nxg, counterexample=True)
            edges = tuple(sorted(tuple(sorted(e)) for e in counter.edges()))
            return PlanarityResult(None, NonPlanarityReport(comp, edges))
        rotators.update(comp_rot)
    rotation = RotationSystem(rotators)
    for comp in graph.components():
        sub = graph.induced_subgraph(comp)
        traced = trace_faces(sub, rotation.restricted_to(comp))
        if traced.genus != 0:
            raise AssertionError("planar embedding traced to nonzero genus")
    return PlanarityResult(rotation, None)


def _to_nx_simple(graph: Graph) -> "nx.Graph":
    g = nx.Graph()
    for v in sorted(graph.vertices):
        g.add_node(v)
    for eid in sorted(graph.edges):
        u, v = graph.endpoints(eid)
        if u != v:
            g.add_edge(u, v)
    return g


def _planar_rotators_connected(graph: Graph) -> dict[str, tuple[HalfEdge, ...]] | None:
    nxg = _to_nx_simple(graph)
    ok, emb = nx.check_planarity(nxg)
    if not ok:
        return None
    order = emb.get_data()
    rotators: dict[str, tuple[HalfEdge, ...]] = {}
    for v in sorted(graph.vertices):
        cyc: list[HalfEdge] = []
        for w in order.get(v, []):
            block = sorted(graph.edges_between(v, w))
            # Parallel edges ride along a single embedded edge; opposite
            # relative order at the two endpoints keeps every digon a face.
            if v > w:
                block = block[::-1]
            for eid in block:
                u0, _ = graph.endpoints(eid)
                cyc.append((eid, 0 if u0 == v else 1))
        for eid in sorted(graph.edges_between(v, v)):
            cyc.extend([(eid, 0), (eid, 1)])
        rotators[v] = tuple(cyc)
    return rotators


def is_2_connected(graph: Graph) -> bool:
    """Connected, at least three vertices, no loops, and no cutvertex."""
    if len(graph.vertices) < 3 or graph.loops():
        return False
    if not graph.is_connected():
        return False
    for v in graph.vertices:
        rest = graph.induced_subgraph(graph.vertices - {v})
        if not rest.is_connected():
            return False
    return True


class MinorWitness:
    """Branch sets realizing a K4 or K2,3 minor."""

    def __init__(self, target: str, branch_sets: Sequence[frozenset[str]],
                 connecting_edges: Mapping[tuple[int, int], str]):
        self.target = target
        self.branch_sets = tuple(branch_sets)
        self.connecting_edges = dict(connecting_edges)

    def __repr__(self) -> str:
        return f"MinorWitness({self.target})"


_PATTERNS: dict[str, tuple[int, tuple[tuple[int, int], ...]]] = {
    "K4": (4, tuple(itertools.combinations(range(4), 2))),
    "K2,3": (5, ((0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4))),
}

_minor_cache: dict[tuple, "MinorWitness | None"] = {}


def find_minor(graph: Graph, target: str) -> MinorWitness | None:
    """Exact search for a K4 or K2,3 minor via branch-set enumeration."""
    if target not in _PATTERNS:
        raise ValueError(f"unsupported minor target {target}")
    key = (graph.canonical_key(), target)
    if key in _minor_cache:
        return _minor_cache[key]
    witness = _search_minor(graph, target)
    _minor_cache[key] = witness
    return witness


def _search_minor(graph: Graph, target: str) -> MinorWitness | None:
    k, pattern_edges = _PATTERNS[target]
    verts = sorted(graph.vertices)
    n = len(verts)
    if n < k:
        return None
    idx = {v: i for i, v in enumerate(verts)}
    adj = [0] * n
    edge_for: dict[tuple[int, int], str] = {}
    for eid in sorted(graph.edges):
        u, v = graph.endpoints(eid)
        if u == v:
            continue
        iu, iv = idx[u], idx[v]
        adj[iu] |= 1 << iv
        adj[iv] |= 1 << iu
        pair = (min(iu, iv), max(iu, iv))
        edge_for.setdefault(pair, eid)

    connected_subsets = _connected_subsets(adj, n)
    nbr_mask = list(adj)

    def subset_nbrs(mask: int) -> int:
        out = 0
        m = mask
        while m:
            b = m & -m
            out |= nbr_mask[b.bit_length() - 1]
            m ^= b
        return out & ~mask

    requires: list[list[int]] = [[] for _ in range(k)]
    for i, j in pattern_edges:
        requires[max(i, j)].append(min(i, j))

    chosen: list[int] = []

    def place(i: int, used: int) -> bool:
        if i == k:
            return True
        for mask in connected_subsets:
            if mask & used:
                continue
            nb = subset_nbrs(mask)
            if any(not (nb & chosen[j]) for j in requires[i]):
                continue
            chosen.append(mask)
            if place(i + 1, used | mask):
                return True
            chosen.pop()
        return False

    if not place(0, 0):
        return None

    branch_sets = [frozenset(verts[b] for b in _bits(mask)) for mask in chosen]
    connecting: dict[tuple[int, int], str] = {}
    for i, j in pattern_edges:
        found = None
        for a in _bits(chosen[i]):
            for b in _bits(chosen[j]):
                pair = (min(a, b), max(a, b))
                if pair in edge_for:
                    found = edge_for[pair]
                    break
            if found:
                break
        connecting[(i, j)] = found
    return MinorWitness(target, branch_sets, connecting)


def _bits(mask: int):
    while mask:
        b = mask & -mask
        yield b.bit_length() - 1
        mask ^= b


def _connected_subsets(adj: list[int], n: int) -> list[int]:
    """All nonempty connected vertex subsets as bitmasks, ascending."""
    out = []
    for mask in range(1, 1 << n):
        low = mask & -mask
        reach = low
        while True:
            grow = reach
            m = reach
            while m:
                b = m & -m
                grow |= adj[b.bit_length() - 1] & mask
                m ^= b
            if grow == reach:
                break
            reach = grow
        if reach == mask:
            out.append(mask)
    return out


def verify_minor_witness(graph: Graph, witness: MinorWitness) -> bool:
    """Structural recheck: disjoint connected branch sets, adjacencies realized."""
    k, pattern_edges = _PATTERNS.get(witness.target, (0, ()))
    sets = witness.branch_sets
    if len(sets) != k:
        return False
    allv = set()
    for s in sets:
        if not s or not (s <= graph.vertices):
            return False
        if allv & s:
            return False
        allv |= s
        if not graph.induced_subgraph(s).is_connected():
            return False
    for i, j in pattern_edges:
        eid = witness.connecting_edges.get((i, j))
        if eid is None or eid not in graph.edges:
            return False
        u, v = graph.endpoints(eid)
        if not ((u in sets[i] and v in sets[j]) or (u in sets[j] and v in sets[i])):
            return False
    return True


class OuterplanarityResult:
    """Outcome of the outerplanarity test.

    For 2-connected simple outerplanar graphs the unique Hamilton boundary
    cycle and the chord set are reported; otherwise only the verdict, with a
    minor witness on negatives.
    """

    def __init__(self, outerplanar: bool, boundary: tuple[str, ...] | None = None,
                 boundary_edges: frozenset[str] | None = None,
                 chords: frozenset[str] | None = None,
                 witness: MinorWitness | None = None):
        self.outerplanar = outerplanar
        self.boundary = boundary
        self.boundary_edges = boundary_edges
        self.chords = chords
        self.witness = witness

    def __repr__(self) -> str:
        return f"OuterplanarityResult({self.outerplanar})"


def test_outerplanar(graph: Graph) -> OuterplanarityResult:
    """Outerplanarity via planarity of the one-dimensional cone.

    On failure returns a K4 or K2,3 minor witness (searched in that order).
    Loops and parallel edges are ignored for the verdict; boundary and chord
    structure is only computed for simple 2-connected graphs.
    """
    coned = _one_dim_cone(graph)
    if test_planar(coned).is_planar:
        result = OuterplanarityResult(True)
        if graph.is_simple() and is_2_connected(graph):
            boundary, bedges, chords = _boundary_structure(graph)
            result = OuterplanarityResult(True, boundary, bedges, chords)
        return result
    witness = find_minor(graph, "K4") or find_minor(graph, "K2,3")
    if witness is None:
        raise AssertionError("non-outerplanar graph without K4 or K2,3 minor")
    return OuterplanarityResult(False, witness=witness)


def _one_dim_cone(graph: Graph) -> Graph:
    apex = "apex"
    while apex in graph.vertices:
        apex += "x"
    edges = graph.edges
    used = set(edges)
    for v in sorted(graph.vertices):
        eid = f"{apex}{v}"
        while eid in used:
            eid += "x"
        used.add(eid)
        edges[eid] = (apex, v)
    return Graph(set(graph.vertices) | {apex}, edges)


def _boundary_structure(graph: Graph) -> tuple[tuple[str, ...], frozenset[str], frozenset[str]]:
    """Hamilton boundary cycle and chords of a 2-connected outerplanar graph.

    An edge is a chord exactly when its endpoints separate the graph; the
    non-separating edges form the unique Hamilton cycle.
    """
    boundary_edges = set()
    chords = set()
    for eid in sorted(graph.edges):
        u, v = graph.endpoints(eid)
        rest = graph.induced_subgraph(graph.vertices - {u, v})
        if len(rest.vertices) <= 1 or rest.is_connected():
            boundary_edges.add(eid)
        else:
            chords.add(eid)
    # Walk the boundary cycle from the smallest vertex.
    succ: dict[str, list[str]] = {v: [] for v in graph.vertices}
    for eid in boundary_edges:
        u, v = graph.endpoints(eid)
        succ[u].append(v)
        succ[v].append(u)
    if any(len(ws) != 2 for ws in succ.values()):
        raise AssertionError("boundary edges do not form a Hamilton cycle")
    start = min(graph.vertices)
    cycle = [start]
    prev, at = None, start
    while True:
        nxt = sorted(w for w in succ[at] if w != prev)[0] if prev is None else \
            (succ[at][0] if succ[at][1] == prev else succ[at][1])
        if nxt == start:
            break
        cycle.append(nxt)
        prev, at = at, nxt
    if len(cycle) != len(graph.vertices):
        raise AssertionError("boundary edges do not form a Hamilton cycle")
    return tuple(cycle), frozenset(boundary_edges), frozenset(chords)


def check_cycle(graph: Graph, cycle_edges: Iterable[str]) -> frozenset[str]:
    """Check edge ids form a genuine cycle of the graph; return its vertices."""
    es = sorted(set(cycle_edges))
    if not es:
        raise ValueError("empty cycle")
    deg: dict[str, int] = {}
    for eid in es:
        if eid not in graph.edges:
            raise ValueError(f"unknown edge {eid}")
        u, v = graph.endpoints(eid)
        if u == v:
            raise ValueError(f"loop {eid} cannot lie on a cycle")
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    if any(d != 2 for d in deg.values()):
        raise ValueError("edge set is not a cycle: wrong degrees")
    sub = Graph(set(deg), {e: graph.endpoints(e) for e in es})
    if not sub.is_connected():
        raise ValueError("edge set is not a cycle: disconnected")
    return frozenset(deg)


def cycle_sides(traced: TracedFaces, cycle_edges: Iterable[str]) -> tuple[frozenset[int], frozenset[int]]:
    """Split the traced faces into the two sides of a cycle.

    Removing the dual edges that cross the cycle must leave exactly two
    components of the dual graph; requires genus zero.
    """
    cyc = frozenset(cycle_edges)
    if cyc in traced._side_cache:
        return traced._side_cache[cyc]
    if traced.genus != 0:
        raise ValueError("cycle sides are defined only on genus-zero tracings")
    check_cycle(traced.graph, cyc)
    n = len(traced.orbits)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for eid in traced.graph.edges:
        if eid in cyc:
            continue
        a = find(traced.orbit_index_of((eid, 0)))
        b = find(traced.orbit_index_of((eid, 1)))
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups: dict[int, set[int]] = {}
    for i in range(n):
        groups.setdefault(find(i), set()).add(i)
    if len(groups) != 2:
        raise AssertionError(f"cycle separates the sphere into {len(groups)} parts")
    side_a, side_b = sorted((frozenset(s) for s in groups.values()), key=min)
    traced._side_cache[cyc] = (side_a, side_b)
    return side_a, side_b


def cycles_cross(traced: TracedFaces, c1: Iterable[str], c2: Iterable[str]) -> bool:
    """Whether two cycles cross: no side of one contains a side of the other.

    Independent of any outer-face choice; equal cycles do not cross.
    """
    a, a2 = cycle_sides(traced, c1)
    b, b2 = cycle_sides(traced, c2)
    return not (a <= b or a <= b2 or a2 <= b or a2 <= b2)


class NestingForest:
    """Laminar containment forest of cycle interiors on a sphere tracing."""

    def __init__(self, outer_face: int, interiors: Mapping[str, frozenset[int]],
                 parent: Mapping[str, str | None]):
        self.outer_face = outer_face
        self.interiors = dict(interiors)
        self.parent = dict(parent)

    def roots(self) -> tuple[str, ...]:
        return tuple(sorted(c for c, p in self.parent.items() if p is None))

    def children(self, cid: str) -> tuple[str, ...]:
        return tuple(sorted(c for c, p in self.parent.items() if p == cid))

    def is_laminar(self) -> bool:
        ints = sorted(self.interiors.items())
        for (_, a), (_, b) in itertools.combinations(ints, 2):
            if not (a <= b or b <= a or not (a & b)):
                return False
        return True

    def __repr__(self) -> str:
        return f"NestingForest({len(self.interiors)} cycles)"


class CrossingPair:
    def __init__(self, first: str, second: str):
        self.first = first
        self.second = second

    def __repr__(self) -> str:
        return f"CrossingPair({self.first}, {self.second})"


def nesting_forest(traced: TracedFaces, cycles: Mapping[str, Iterable[str]],
                   outer_face: int | None = None) -> NestingForest | CrossingPair:
    """Containment forest of cycle interiors, or the first crossing pair.

    The outer face defaults to the first traced orbit; the interior of a
    cycle is its side away from the outer face.  Crossing pairs are reported
    in lexicographic order of cycle ids.
    """
    ids = sorted(cycles)
    edge_sets = {cid: frozenset(cycles[cid]) for cid in ids}
    for ca, cb in itertools.combinations(ids, 2):
        if cycles_cross(traced, edge_sets[ca], edge_sets[cb]):
            return CrossingPair(ca, cb)
    outer = traced.outer_face_index() if outer_face is None else outer_face
    interiors: dict[str, frozenset[int]] = {}
    for cid in ids:
        sa, sb = cycle_sides(traced, edge_sets[cid])
        interiors[cid] = sb if outer in sa else sa
    parent = _containment_forest(interiors)
    return NestingForest(outer, interiors, parent)


def _containment_forest(interiors: Mapping[str, frozenset[int]]) -> dict[str, str | None]:
    """Parent = minimal strict superset; equal interiors chain by id order."""
    parent: dict[str, str | None] = {}
    for c in sorted(interiors):
        candidates = [d for d in interiors
                      if d != c and (interiors[c] < interiors[d]
                                     or (interiors[c] == interiors[d] and d < c))]
        if candidates:
            parent[c] = min(candidates, key=lambda d: (len(interiors[d]), d))
        else:
            parent[c] = None
    return parent
