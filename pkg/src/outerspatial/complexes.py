"""Two-dimensional complexes: graphs with a set of cycles attached as faces.

A complex is a (multi)graph together with faces given by closed boundary
walks.  Valid input complexes have genuine cycles as boundaries (no repeated
vertex, length at least three); degenerate walks are still representable so
that edge contraction stays total.  All values are immutable after
construction and every operation returns a new value.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Mapping, Sequence

# A half-edge is (edge id, end index); end 0/1 refer to the stored endpoint
# pair.  A dart (directed half-edge) uses the same encoding: (e, o) traverses
# e from endpoints[o] to endpoints[1 - o].
HalfEdge = tuple[str, int]


class Graph:
    """Undirected multigraph with labelled edges; loops and parallels allowed."""

    def __init__(self, vertices: Iterable[str], edges: Mapping[str, tuple[str, str]]):
        self._vertices = frozenset(vertices)
        self._edges: dict[str, tuple[str, str]] = {}
        for eid in sorted(edges):
            u, v = edges[eid]
            if u not in self._vertices or v not in self._vertices:
                raise ValueError(f"edge {eid} has undeclared endpoint")
            self._edges[eid] = (u, v)
        incident: dict[str, list[str]] = {v: [] for v in sorted(self._vertices)}
        for eid, (u, v) in self._edges.items():
            incident[u].append(eid)
            if v != u:
                incident[v].append(eid)
        self._incident = {v: tuple(es) for v, es in incident.items()}

    @property
    def vertices(self) -> frozenset[str]:
        return self._vertices

    @property
    def edges(self) -> dict[str, tuple[str, str]]:
        return dict(self._edges)

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(self._edges)

    def endpoints(self, eid: str) -> tuple[str, str]:
        return self._edges[eid]

    def is_loop(self, eid: str) -> bool:
        u, v = self._edges[eid]
        return u == v

    def incident_edges(self, v: str) -> tuple[str, ...]:
        """Edge ids at v, sorted; a loop appears once."""
        return self._incident[v]

    def half_edges_at(self, v: str) -> tuple[HalfEdge, ...]:
        """Half-edges at v, sorted; a loop contributes both of its ends."""
        out: list[HalfEdge] = []
        for eid in self._incident[v]:
            u, w = self._edges[eid]
            if u == w:
                out.append((eid, 0))
                out.append((eid, 1))
            else:
                out.append((eid, 0 if u == v else 1))
        return tuple(sorted(out))

    def degree(self, v: str) -> int:
        return len(self.half_edges_at(v))

    def neighbors(self, v: str) -> frozenset[str]:
        out = set()
        for eid in self._incident[v]:
            u, w = self._edges[eid]
            out.add(w if u == v else u)
        out.discard(v)
        return frozenset(out)

    def edges_between(self, u: str, v: str) -> tuple[str, ...]:
        out = [e for e in self._incident.get(u, ()) if set(self._edges[e]) == {u, v}]
        if u == v:
            out = [e for e in self._incident.get(u, ()) if self.is_loop(e) and self._edges[e][0] == u]
        return tuple(sorted(out))

    def loops(self) -> tuple[str, ...]:
        return tuple(e for e in self._edges if self.is_loop(e))

    def parallel_pairs(self) -> tuple[tuple[str, str], ...]:
        """Pairs of distinct edges with the same endpoint set."""
        by_ends: dict[frozenset[str], list[str]] = {}
        for eid, (u, v) in self._edges.items():
            by_ends.setdefault(frozenset((u, v)), []).append(eid)
        out = []
        for group in by_ends.values():
            for a, b in itertools.combinations(sorted(group), 2):
                out.append((a, b))
        return tuple(sorted(out))

    def is_simple(self) -> bool:
        return not self.loops() and not self.parallel_pairs()

    def components(self) -> list[frozenset[str]]:
        """Vertex sets of connected components, sorted by smallest vertex."""
        seen: set[str] = set()
        comps = []
        for start in sorted(self._vertices):
            if start in seen:
                continue
            comp = {start}
            stack = [start]
            while stack:
                v = stack.pop()
                for w in self.neighbors(v):
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def induced_subgraph(self, vertices: Iterable[str]) -> "Graph":
        vs = frozenset(vertices)
        edges = {e: uv for e, uv in self._edges.items() if uv[0] in vs and uv[1] in vs}
        return Graph(vs, edges)

    def canonical_key(self) -> tuple:
        return (tuple(sorted(self._vertices)), tuple(sorted(self._edges.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return f"Graph({len(self._vertices)} vertices, {len(self._edges)} edges)"


def complete_graph(names: Sequence[str]) -> Graph:
    edges = {f"{u}{v}": (u, v) for u, v in itertools.combinations(sorted(names), 2)}
    return Graph(names, edges)


def cycle_graph(names: Sequence[str]) -> Graph:
    n = len(names)
    edges = {}
    for i in range(n):
        u, v = names[i], names[(i + 1) % n]
        a, b = sorted((u, v))
        edges[f"{a}{b}"] = (a, b)
    return Graph(names, edges)


def complete_bipartite(left: Sequence[str], right: Sequence[str]) -> Graph:
    edges = {f"{u}{v}": (u, v) for u in left for v in right}
    return Graph(list(left) + list(right), edges)


# Face boundaries are closed walks stored as steps (vertex, edge, orientation):
# step i leaves vertex v_i along e_i, arriving at v_{i+1}; orientation o_i says
# e_i is traversed from its stored endpoint o_i.  Orientations matter only for
# loop edges, where the vertex alone cannot identify the half-edge used.
Step = tuple[str, str, int]


class Face:
    """A face: an id plus a closed boundary walk in canonical form."""

    def __init__(self, face_id: str, steps: Sequence[Step]):
        if not steps:
            raise ValueError(f"face {face_id}: empty boundary")
        self.face_id = face_id
        self.steps = _canonical_walk(tuple(steps))

    @classmethod
    def from_vertices(cls, graph: Graph, face_id: str, vertices: Sequence[str]) -> "Face":
        """Build from a vertex sequence; edges are inferred and must be unique."""
        k = len(vertices)
        steps = []
        for i in range(k):
            u, v = vertices[i], vertices[(i + 1) % k]
            cands = graph.edges_between(u, v)
            if not cands:
                raise ValueError(f"face {face_id}: no edge between {u} and {v}")
            if len(cands) > 1:
                raise ValueError(
                    f"face {face_id}: ambiguous edge between {u} and {v}; list edge ids instead")
            eid = cands[0]
            o = 0 if graph.endpoints(eid)[0] == u else 1
            steps.append((u, eid, o))
        return cls(face_id, steps)

    @classmethod
    def from_edges(cls, graph: Graph, face_id: str, edge_ids: Sequence[str]) -> "Face":
        """Build from an edge sequence forming a closed walk."""
        k = len(edge_ids)
        if k == 0:
            raise ValueError(f"face {face_id}: empty boundary")
        for eid in edge_ids:
            if eid not in graph.edges:
                raise ValueError(f"face {face_id}: unknown edge {eid}")
        # Choose the start vertex of the first edge so the walk closes up.
        first = edge_ids[0]
        for o0 in (0, 1):
            steps = _walk_from(graph, edge_ids, graph.endpoints(first)[o0])
            if steps is not None:
                return cls(face_id, steps)
        raise ValueError(f"face {face_id}: edges do not form a closed walk")

    @property
    def vertices(self) -> tuple[str, ...]:
        return tuple(s[0] for s in self.steps)

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(s[1] for s in self.steps)

    @property
    def edge_set(self) -> frozenset[str]:
        return frozenset(self.edge_ids)

    def __len__(self) -> int:
        return len(self.steps)

    def is_genuine_cycle(self) -> bool:
        """No repeated vertex and length at least three."""
        vs = self.vertices
        return len(vs) >= 3 and len(set(vs)) == len(vs)

    def boundary_key(self) -> tuple:
        """Canonical boundary, used to detect duplicate faces."""
        return self.steps

    def __eq__(self, other) -> bool:
        return isinstance(other, Face) and (self.face_id, self.steps) == (other.face_id, other.steps)

    def __hash__(self) -> int:
        return hash((self.face_id, self.steps))

    def __repr__(self) -> str:
        return f"Face({self.face_id}: {'-'.join(self.vertices)})"


def _walk_from(graph: Graph, edge_ids: Sequence[str], start: str) -> tuple[Step, ...] | None:
    steps: list[Step] = []
    at = start
    for eid in edge_ids:
        u, v = graph.endpoints(eid)
        if at == u:
            steps.append((at, eid, 0))
            at = v
        elif at == v:
            steps.append((at, eid, 1))
            at = u
        else:
            return None
    return tuple(steps) if at == start else None


def _canonical_walk(steps: tuple[Step, ...]) -> tuple[Step, ...]:
    """Lexicographically minimal rotation or reflection of the walk."""
    k = len(steps)
    variants = []
    for r in range(k):
        variants.append(steps[r:] + steps[:r])
    reflected = _reflect(steps)
    for r in range(k):
        variants.append(reflected[r:] + reflected[:r])
    return min(variants)


def _reflect(steps: tuple[Step, ...]) -> tuple[Step, ...]:
    k = len(steps)
    out = []
    for j in range(k):
        v = steps[(k - j) % k][0]
        _, e, o = steps[(k - j - 1) % k]
        out.append((v, e, 1 - o))
    return tuple(out)


class TwoComplex:
    """A graph plus a set of faces with closed boundary walks."""

    def __init__(self, graph: Graph, faces: Iterable[Face]):
        self.graph = graph
        self._faces: dict[str, Face] = {}
        for f in sorted(faces, key=lambda f: f.face_id):
            if f.face_id in self._faces:
                raise ValueError(f"duplicate face id {f.face_id}")
            for v, e, o in f.steps:
                if e not in graph.edges:
                    raise ValueError(f"face {f.face_id}: unknown edge {e}")
                if graph.endpoints(e)[o] != v:
                    raise ValueError(f"face {f.face_id}: walk not incident at {v}")
            self._faces[f.face_id] = f

    @property
    def faces(self) -> dict[str, Face]:
        return dict(self._faces)

    def face_ids(self) -> tuple[str, ...]:
        return tuple(self._faces)

    def face(self, fid: str) -> Face:
        return self._faces[fid]

    def faces_with_edge(self, eid: str) -> tuple[str, ...]:
        return tuple(fid for fid, f in self._faces.items() if eid in f.edge_ids)

    def edge_face_count(self) -> dict[str, int]:
        counts = {e: 0 for e in self.graph.edges}
        for f in self._faces.values():
            for e in f.edge_ids:
                counts[e] += 1
        return counts

    def canonical_key(self) -> tuple:
        return (self.graph.canonical_key(),
                tuple((fid, f.steps) for fid, f in self._faces.items()))

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoComplex) and self.canonical_key() == other.canonical_key()

    def __hash__(self) -> int:
        return hash(self.canonical_key())

    def __repr__(self) -> str:
        return (f"TwoComplex({len(self.graph.vertices)} vertices, "
                f"{len(self.graph.edges)} edges, {len(self._faces)} faces)")


class Violation:
    """A validation diagnostic naming the offending element."""

    def __init__(self, kind: str, element: str, message: str):
        self.kind = kind
        self.element = element
        self.message = message

    def __repr__(self) -> str:
        return f"Violation({self.kind}: {self.message})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, Violation)
                and (self.kind, self.element) == (other.kind, other.element))


def validate(complex: TwoComplex) -> list[Violation]:
    """Diagnostics for a candidate input complex; empty iff simple with genuine-cycle faces."""
    out: list[Violation] = []
    g = complex.graph
    for e in g.loops():
        u = g.endpoints(e)[0]
        out.append(Violation("loop", e, f"loop {e} at {u}"))
    for a, b in g.parallel_pairs():
        out.append(Violation("parallel-edge", b, f"edges {a} and {b} are parallel"))
    for fid, f in complex.faces.items():
        for v, e, o in f.steps:
            if e not in g.edges or g.endpoints(e)[o] != v:
                out.append(Violation("dangling-reference", fid,
                                     f"face {fid} references missing incidence"))
                break
        if not f.is_genuine_cycle():
            out.append(Violation("non-cycle-face", fid,
                                 f"face {fid} boundary is not a genuine cycle"))
    seen: dict[tuple, str] = {}
    for fid, f in complex.faces.items():
        key = f.boundary_key()
        if key in seen:
            out.append(Violation("duplicate-face", fid,
                                 f"faces {seen[key]} and {fid} have the same boundary"))
        else:
            seen[key] = fid
    return out


def skeleton(complex: TwoComplex) -> Graph:
    """The underlying graph, faces dropped."""
    return Graph(complex.graph.vertices, complex.graph.edges)


class LinkGraph:
    """The local structure around a vertex.

    Vertices are the half-edges at the host vertex (named by edge id for
    non-loops) and there is one edge per face corner at the host, labelled by
    the face it comes from.
    """

    def __init__(self, host: str, graph: Graph, edge_face: dict[str, str],
                 vertex_half_edge: dict[str, HalfEdge]):
        self.host = host
        self.graph = graph
        self.edge_face = dict(edge_face)
        self.vertex_half_edge = dict(vertex_half_edge)

    def __repr__(self) -> str:
        return f"LinkGraph({self.host}: {self.graph!r})"


def _link_vertex_name(graph: Graph, v: str, half_edge: HalfEdge) -> str:
    eid, end = half_edge
    return eid if not graph.is_loop(eid) else f"{eid}:{end}"


def link_graph(complex: TwoComplex, v: str) -> LinkGraph:
    """Link graph at v via the corner rule: one edge per face corner at v."""
    g = complex.graph
    if v not in g.vertices:
        raise ValueError(f"unknown vertex {v}")
    names: dict[HalfEdge, str] = {}
    for h in g.half_edges_at(v):
        names[h] = _link_vertex_name(g, v, h)
    link_edges: dict[str, tuple[str, str]] = {}
    edge_face: dict[str, str] = {}
    for fid in complex.face_ids():
        f = complex.face(fid)
        k = len(f.steps)
        occ = 0
        for i, (w, eid, o) in enumerate(f.steps):
            if w != v:
                continue
            # Corner at v: arrive via the previous step's far end, leave via this step.
            pv, pe, po = f.steps[(i - 1) % k]
            come = (pe, 1 - po)
            go = (eid, o)
            le_id = fid if occ == 0 else f"{fid}@{occ}"
            link_edges[le_id] = (names[come], names[go])
            edge_face[le_id] = fid
            occ += 1
    lg = Graph(sorted(set(names.values())), link_edges)
    vhe = {name: h for h, name in names.items()}
    return LinkGraph(v, lg, edge_face, vhe)


def cone(complex: TwoComplex, apex: str | None = None) -> TwoComplex:
    """Add a top vertex joined to every vertex, plus a triangle per edge."""
    g = complex.graph
    if g.loops():
        raise ValueError("cone is undefined for complexes with loops")
    top = apex if apex is not None else _fresh_name("t", g.vertices)
    if top in g.vertices:
        raise ValueError(f"apex name {top} already in use")
    vertices = set(g.vertices) | {top}
    edges = g.edges
    used = set(edges)
    spoke: dict[str, str] = {}
    for v in sorted(g.vertices):
        sid = _fresh_name(f"{top}{v}", used)
        used.add(sid)
        spoke[v] = sid
        edges[sid] = (top, v)
    new_graph = Graph(vertices, edges)
    faces = list(complex.faces.values())
    face_ids = set(complex.face_ids())
    for eid in sorted(g.edges):
        u, v = g.endpoints(eid)
        fid = _fresh_name(f"{top}{eid}", face_ids)
        face_ids.add(fid)
        faces.append(Face.from_vertices(new_graph, fid, (top, u, v)))
    return TwoComplex(new_graph, faces)


def _fresh_name(base: str, taken: Iterable[str]) -> str:
    taken = set(taken)
    if base not in taken:
        return base
    for i in itertools.count():
        cand = f"{base}{i}"
        if cand not in taken:
            return cand


class Path:
    """A path in a complex: distinct vertices joined by edges; may be trivial."""

    def __init__(self, vertices: Sequence[str], edge_ids: Sequence[str]):
        if len(edge_ids) != len(vertices) - 1:
            raise ValueError("path needs one fewer edge than vertices")
        if len(set(vertices)) != len(vertices):
            raise ValueError("path vertices must be distinct")
        self.vertices = tuple(vertices)
        self.edge_ids = tuple(edge_ids)

    @classmethod
    def from_vertices(cls, graph: Graph, vertices: Sequence[str]) -> "Path":
        edge_ids = []
        for u, v in zip(vertices, vertices[1:]):
            cands = graph.edges_between(u, v)
            if not cands:
                raise ValueError(f"no edge between {u} and {v}")
            edge_ids.append(cands[0])
        return cls(vertices, edge_ids)

    def is_trivial(self) -> bool:
        return len(self.vertices) == 1

    def check_in(self, graph: Graph) -> None:
        for (u, v), eid in zip(zip(self.vertices, self.vertices[1:]), self.edge_ids):
            if eid not in graph.edges:
                raise ValueError(f"path edge {eid} not in graph")
            if set(graph.endpoints(eid)) != {u, v}:
                raise ValueError(f"path edge {eid} does not join {u} and {v}")
            if graph.is_loop(eid):
                raise ValueError(f"cannot contract loop {eid}")

    def __repr__(self) -> str:
        return f"Path({'-'.join(self.vertices)})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Path) and self.vertices == other.vertices \
            and self.edge_ids == other.edge_ids

    def __hash__(self):
        return hash((self.vertices, self.edge_ids))


def contracted_vertex_name(path: Path, taken: Iterable[str] = ()) -> str:
    """Name of the merged vertex after contracting a path."""
    if path.is_trivial():
        return path.vertices[0]
    base = "p" + "".join(path.vertices)
    return _fresh_name(base, set(taken) - set(path.vertices))


def contract_path(complex: TwoComplex, path: Path) -> TwoComplex:
    """Contract all edges of a path, merging its vertices into one.

    Face boundaries are rewritten with the contracted edges elided; results
    may be degenerate walks (repeated vertices or length below three), which
    stay representable so link graphs remain computable.
    """
    g = complex.graph
    path.check_in(g)
    if path.is_trivial():
        if path.vertices[0] not in g.vertices:
            raise ValueError(f"unknown vertex {path.vertices[0]}")
        return complex
    merged = contracted_vertex_name(path, g.vertices)
    gone_vertices = set(path.vertices)
    gone_edges = set(path.edge_ids)

    def rename(v: str) -> str:
        return merged if v in gone_vertices else v

    vertices = {rename(v) for v in g.vertices}
    edges = {}
    for eid, (u, v) in g.edges.items():
        if eid in gone_edges:
            continue
        edges[eid] = (rename(u), rename(v))
    new_graph = Graph(vertices, edges)

    faces = []
    for fid in complex.face_ids():
        f = complex.face(fid)
        steps = [(rename(v), e, o) for v, e, o in f.steps if e not in gone_edges]
        if not steps:
            raise ValueError(f"face {fid} would lose its whole boundary")
        faces.append(Face(fid, steps))
    return TwoComplex(new_graph, faces)


def delete_faces(complex: TwoComplex, face_ids: Iterable[str]) -> TwoComplex:
    """Delete faces; cells incident only with the removed faces and nothing
    else go with them.

    Boundary cells of a genuine-cycle face are always also incident with
    their own subcells (an edge with its endpoints, a vertex with its edges),
    so in practice the skeleton persists: deleting every face of the
    tetrahedron leaves the bare K4 graph.
    """
    doomed = set(face_ids)
    unknown = doomed - set(complex.face_ids())
    if unknown:
        raise ValueError(f"unknown face ids: {sorted(unknown)}")
    kept_faces = [f for fid, f in complex.faces.items() if fid not in doomed]
    return TwoComplex(Graph(complex.graph.vertices, complex.graph.edges), kept_faces)


def vertex_sum(h1: Graph, h2: Graph, v: str, pairing: Mapping[str, str]) -> Graph:
    """Glue two graphs at a shared vertex by pairing its incident edges.

    The result is the disjoint union minus v, with one new edge per pair of
    incident edges identified by the pairing.
    """
    if v not in h1.vertices or v not in h2.vertices:
        raise ValueError(f"{v} must be a vertex of both graphs")
    shared = h1.vertices & h2.vertices
    if shared != {v}:
        raise ValueError(f"graphs must be disjoint apart from {v}; shared: {sorted(shared)}")
    inc1, inc2 = set(h1.incident_edges(v)), set(h2.incident_edges(v))
    if any(h.is_loop(e) for h, es in ((h1, inc1), (h2, inc2)) for e in es):
        raise ValueError("vertex sum is undefined with loops at the summing vertex")
    if set(pairing) != inc1 or set(pairing.values()) != inc2 or len(set(pairing.values())) != len(pairing):
        raise ValueError("pairing must be a bijection between the incident edge sets")

    vertices = (h1.vertices | h2.vertices) - {v}
    edges: dict[str, tuple[str, str]] = {}
    for h, inc in ((h1, inc1), (h2, inc2)):
        for eid, (a, b) in h.edges.items():
            if eid in inc:
                continue
            edges[eid] = (a, b)

    def other(h: Graph, eid: str) -> str:
        a, b = h.endpoints(eid)
        return b if a == v else a

    used = set(edges)
    for e1 in sorted(pairing):
        e2 = pairing[e1]
        nid = _fresh_name(e1 if e1 == e2 else f"{e1}~{e2}", used)
        used.add(nid)
        edges[nid] = (other(h1, e1), other(h2, e2))
    return Graph(vertices, edges)


def associated_complex(graph: Graph, cycles: Mapping[str, Sequence[str]] | Iterable[tuple[str, Sequence[str]]]) -> TwoComplex:
    """The complex whose skeleton is the graph and whose faces are the cycles."""
    items = cycles.items() if isinstance(cycles, Mapping) else list(cycles)
    faces = []
    seen: dict[tuple, str] = {}
    for fid, vs in items:
        f = Face.from_vertices(graph, fid, tuple(vs))
        if not f.is_genuine_cycle():
            raise ValueError(f"constraint {fid} is not a genuine cycle")
        key = f.boundary_key()
        if key in seen:
            raise ValueError(f"constraints {seen[key]} and {fid} are the same cycle")
        seen[key] = fid
        faces.append(f)
    return TwoComplex(graph, faces)


def split_components(complex: TwoComplex) -> list[TwoComplex]:
    """Connected components as complexes, ordered by smallest vertex."""
    out = []
    for comp in complex.graph.components():
        sub = complex.graph.induced_subgraph(comp)
        faces = [f for f in complex.faces.values() if set(f.vertices) <= comp]
        out.append(TwoComplex(sub, faces))
    return out


def graphs_match(g1: Graph, g2: Graph) -> bool:
    """Same vertices and the same multiset of edge endpoint pairs (ids ignored)."""
    if g1.vertices != g2.vertices:
        return False
    ends1 = sorted(tuple(sorted(uv)) for uv in g1.edges.values())
    ends2 = sorted(tuple(sorted(uv)) for uv in g2.edges.values())
    return ends1 == ends2
