"""The outerspatial decision pipeline.

Verdicts are sound by construction: positive answers carry a nested sphere
embedding certificate (a genus-zero rotation system plus a laminar forest
over all face boundaries) and negative answers carry an obstruction that
re-verifies structurally — a contracted link with a K4 or K2,3 minor, or a
face subset forming a closed surface with Euler characteristic other than
two.  Hypothesis-violated is reserved for inputs on which neither sound
answer was established.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .complexes import (Graph, LinkGraph, Path, TwoComplex, contract_path,
                        contracted_vertex_name, delete_faces, link_graph,
                        skeleton, split_components, validate)
from .embedding import (CrossingPair, Dart, MinorWitness,
                        OuterplanarityResult, RotationSystem, TracedFaces,
                        cycle_sides, find_minor, is_2_connected,
                        nesting_forest, test_outerplanar, test_planar,
                        trace_faces, verify_minor_witness)
from .surface import (SurfaceClass, classify_component,
                      _component_is_closed_surface, _orient_faces)

ASPHERICAL_SEARCH_MAX_FACES = 20


class NonOuterplanarLink:
    """A path whose contraction leaves a non-outerplanar link at the merged vertex."""

    def __init__(self, path: Path, link: LinkGraph, witness: MinorWitness):
        self.path = path
        self.link = link
        self.witness = witness

    def __repr__(self) -> str:
        return f"NonOuterplanarLink(path={self.path!r}, witness={self.witness.target})"


class AsphericalSubcomplex:
    """A face subset inducing a closed surface with Euler characteristic != 2."""

    def __init__(self, faces: frozenset[str], surface: SurfaceClass):
        self.faces = faces
        self.surface = surface

    def __repr__(self) -> str:
        return f"AsphericalSubcomplex({len(self.faces)} faces, {self.surface.kind})"


class ExhaustiveFailure:
    """Negative answer proved by exhausting every sphere embedding."""

    def __init__(self, embeddings_tried: int, detail: str = ""):
        self.embeddings_tried = embeddings_tried
        self.detail = detail

    def __repr__(self) -> str:
        return f"ExhaustiveFailure({self.embeddings_tried} embeddings)"


Obstruction = NonOuterplanarLink | AsphericalSubcomplex | ExhaustiveFailure


class ComponentCertificate:
    """Per-component embedding data: outer face orbit and nesting forest."""

    def __init__(self, vertices: tuple[str, ...], outer_darts: tuple[Dart, ...],
                 parents: Mapping[str, str | None]):
        self.vertices = tuple(sorted(vertices))
        self.outer_darts = _normalize_orbit(tuple(outer_darts))
        self.parents = dict(parents)

    def roots(self) -> tuple[str, ...]:
        return tuple(sorted(c for c, p in self.parents.items() if p is None))

    def children(self, cid: str) -> tuple[str, ...]:
        return tuple(sorted(c for c, p in self.parents.items() if p == cid))


def _normalize_orbit(orbit: tuple[Dart, ...]) -> tuple[Dart, ...]:
    if not orbit:
        return orbit
    i = orbit.index(min(orbit))
    return orbit[i:] + orbit[:i]


class NestedCertificate:
    """A genus-zero rotation system plus laminar forests over all face boundaries."""

    def __init__(self, rotation: RotationSystem,
                 components: Iterable[ComponentCertificate]):
        self.rotation = rotation
        self.components = tuple(sorted(components, key=lambda c: c.vertices))

    def __repr__(self) -> str:
        return f"NestedCertificate({len(self.components)} components)"


class Outerspatial:
    kind = "outerspatial"
    exit_code = 0

    def __init__(self, certificate: NestedCertificate):
        self.certificate = certificate

    def __repr__(self) -> str:
        return "Outerspatial(...)"


class NotOuterspatial:
    kind = "not-outerspatial"
    exit_code = 1

    def __init__(self, obstruction: Obstruction):
        self.obstruction = obstruction

    def __repr__(self) -> str:
        return f"NotOuterspatial({self.obstruction!r})"


class LinkViolation:
    def __init__(self, vertex: str, reason: str):
        self.vertex = vertex
        self.reason = reason

    def __repr__(self) -> str:
        return f"LinkViolation({self.vertex}: {self.reason})"


class HypothesisViolated:
    kind = "hypothesis-violated"
    exit_code = 2

    def __init__(self, violations: Iterable[LinkViolation], notes: Iterable[str] = ()):
        self.violations = tuple(violations)
        self.notes = tuple(notes)

    def __repr__(self) -> str:
        return f"HypothesisViolated({len(self.violations)} violations)"


Verdict = Outerspatial | NotOuterspatial | HypothesisViolated


class LinkInfo:
    def __init__(self, link: LinkGraph, simple: bool, two_connected: bool,
                 outerplanarity: OuterplanarityResult):
        self.link = link
        self.simple = simple
        self.two_connected = two_connected
        self.outerplanarity = outerplanarity

    @property
    def is_2_outerplane(self) -> bool:
        return self.simple and self.two_connected and self.outerplanarity.outerplanar


def _link_structures(complex: TwoComplex) -> dict[str, LinkInfo]:
    out: dict[str, LinkInfo] = {}
    for v in sorted(complex.graph.vertices):
        lg = link_graph(complex, v)
        out[v] = LinkInfo(lg, lg.graph.is_simple(), is_2_connected(lg.graph),
                          test_outerplanar(lg.graph))
    return out


def is_locally_2_connected(complex: TwoComplex) -> bool:
    """Every link graph is a 2-connected simple graph."""
    for v in sorted(complex.graph.vertices):
        lg = link_graph(complex, v).graph
        if not lg.is_simple() or not is_2_connected(lg):
            return False
    return True


def find_chordal_faces(complex: TwoComplex,
                       structures: Mapping[str, LinkInfo] | None = None) -> dict[str, frozenset[str]]:
    """Faces that are chords in some link, with the vertices where they are chords."""
    structures = structures if structures is not None else _link_structures(complex)
    out: dict[str, set[str]] = {}
    for v in sorted(structures):
        info = structures[v]
        if not info.is_2_outerplane:
            raise ValueError(f"link at {v} is not 2-connected simple outerplanar")
        chords = info.outerplanarity.chords or frozenset()
        for link_edge in sorted(chords):
            fid = info.link.edge_face[link_edge]
            out.setdefault(fid, set()).add(v)
    return {fid: frozenset(vs) for fid, vs in sorted(out.items())}


class ChordalDefect:
    """A face chordal at one endvertex of an edge but not at the other."""

    def __init__(self, face_id: str, path: Path, link: LinkGraph, witness: MinorWitness):
        self.face_id = face_id
        self.path = path
        self.link = link
        self.witness = witness


def check_perfectly_chordal(complex: TwoComplex, face_id: str,
                            structures: Mapping[str, LinkInfo] | None = None,
                            chordal: Mapping[str, frozenset[str]] | None = None):
    """True when the face is a chord at every endvertex.

    Otherwise walks the boundary to the first edge whose tail has the face as
    a chord and whose head does not; contracting that edge produces a link
    with a K2,3 minor, returned as a ChordalDefect.
    """
    structures = structures if structures is not None else _link_structures(complex)
    chordal = chordal if chordal is not None else find_chordal_faces(complex, structures)
    if face_id not in chordal:
        raise ValueError(f"face {face_id} is not chordal at any vertex")
    face = complex.face(face_id)
    chord_at = chordal[face_id]
    if set(face.vertices) <= chord_at:
        return True
    vs = face.vertices
    k = len(vs)
    for i in range(k):
        u, x = vs[i], vs[(i + 1) % k]
        if u in chord_at and x not in chord_at:
            edge_id = face.steps[i][1]
            path = Path((u, x), (edge_id,))
            contracted = contract_path(complex, path)
            merged = contracted_vertex_name(path, complex.graph.vertices)
            link = link_graph(contracted, merged)
            witness = find_minor(link.graph, "K2,3")
            if witness is None:
                raise AssertionError("imperfectly chordal face without K2,3 in the merged link")
            return ChordalDefect(face_id, path, link, witness)
    raise AssertionError("chordal face with no chord-to-nonchord transition")


def _sphere_rotation_from_links(component: TwoComplex) -> RotationSystem:
    """Rotators of a closed sphere component read off its face structure.

    Faces are first directed coherently (possible exactly on orientable
    components); consecutive darts within directed faces then define the
    cyclic order at every vertex.
    """
    orientation = _orient_faces(component)
    if orientation is None:
        raise AssertionError("sphere component admits no coherent orientation")
    succ: dict[str, dict] = {v: {} for v in component.graph.vertices}
    g = component.graph
    for fid in sorted(component.face_ids()):
        f = component.face(fid)
        darts = [(e, o) for _, e, o in f.steps]
        if orientation[fid]:
            darts = [(e, 1 - o) for e, o in reversed(darts)]
        k = len(darts)
        for i, (e, o) in enumerate(darts):
            head = g.endpoints(e)[1 - o]
            succ[head][(e, 1 - o)] = darts[(i + 1) % k]
    rotators = {}
    for v in sorted(g.vertices):
        half = g.half_edges_at(v)
        if not half:
            rotators[v] = ()
            continue
        start = half[0]
        cyc = [start]
        cur = succ[v][start]
        while cur != start:
            cyc.append(cur)
            cur = succ[v][cur]
        if len(cyc) != len(half):
            raise AssertionError(f"link at {v} did not close into a single rotator")
        rotators[v] = tuple(cyc)
    return RotationSystem(rotators)


def component_certificate(traced: TracedFaces,
                          cycles: Mapping[str, frozenset[str]]) -> ComponentCertificate | CrossingPair:
    """Certificate for one traced component, or the first crossing pair."""
    forest = nesting_forest(traced, cycles)
    if isinstance(forest, CrossingPair):
        return forest
    outer = traced.orbits[forest.outer_face] if traced.orbits else ()
    return ComponentCertificate(tuple(traced.graph.vertices), outer, forest.parent)


def build_certificate(graph: Graph, cycles: Mapping[str, frozenset[str]],
                      rotation: RotationSystem) -> NestedCertificate | CrossingPair:
    """Assemble a certificate from a genus-zero rotation system of the graph."""
    comps = []
    for comp_vs in graph.components():
        sub = graph.induced_subgraph(comp_vs)
        traced = trace_faces(sub, rotation.restricted_to(comp_vs))
        if traced.genus != 0:
            raise ValueError("rotation system does not trace to genus zero")
        comp_cycles = {cid: es for cid, es in cycles.items()
                       if _cycle_vertices(graph, es) <= comp_vs}
        got = component_certificate(traced, comp_cycles)
        if isinstance(got, CrossingPair):
            return got
        comps.append(got)
    return NestedCertificate(rotation, comps)


def _cycle_vertices(graph: Graph, edge_set: frozenset[str]) -> frozenset[str]:
    return frozenset(v for e in edge_set for v in graph.endpoints(e))


def decide_outerspatial(complex: TwoComplex, *, fast_path: bool = True) -> Verdict:
    """Decide outerspatiality with a checkable certificate or obstruction.

    Pipeline: triangle fast path; per-vertex link checks (a non-outerplanar
    link is an immediate sound obstruction); perfect chordality of chordal
    faces; deletion of chordal faces must leave spheres, else an aspherical
    subcomplex; finally a nesting forest over all boundaries in the sphere
    embedding read off the remaining faces.

    Components without faces are settled by planarity alone.  When link
    checks fail, a direct aspherical-subcomplex search still runs (sound
    regardless of the hypothesis); only if that finds nothing is
    HypothesisViolated returned.  Every verdict is re-verified before it is
    handed out.
    """
    problems = validate(complex)
    if problems:
        raise ValueError(f"input complex is not validated: {problems[0].message}")

    faces = complex.faces
    if fast_path and all(len(f) == 3 for f in faces.values()):
        planarity = test_planar(skeleton(complex))
        if planarity.is_planar:
            cycles = {fid: f.edge_set for fid, f in faces.items()}
            cert = build_certificate(complex.graph, cycles, planarity.rotation)
            if isinstance(cert, CrossingPair):
                raise AssertionError("triangles crossed in a plane embedding")
            verdict = Outerspatial(cert)
            _self_check(complex, verdict)
            return verdict

    violations: list[LinkViolation] = []
    notes: list[str] = []
    certificates: list[ComponentCertificate] = []
    rotation_parts: dict = {}
    decided_all = True

    for comp in split_components(complex):
        if not comp.faces:
            planarity = test_planar(comp.graph)
            if planarity.is_planar:
                cycles: dict[str, frozenset[str]] = {}
                cert = build_certificate(comp.graph, cycles, planarity.rotation)
                certificates.extend(cert.components)
                for v in comp.graph.vertices:
                    rotation_parts[v] = planarity.rotation.rotator(v)
            else:
                decided_all = False
                notes.append(
                    "a component with no faces has a non-planar skeleton; "
                    "not outerspatial, but no obstruction of the supported kinds exists")
            continue

        outcome = _decide_component(complex, comp, violations)
        if isinstance(outcome, NotOuterspatial):
            _self_check(complex, outcome)
            return outcome
        if outcome is None:
            decided_all = False
            continue
        comp_rotation, comp_certs = outcome
        certificates.extend(comp_certs)
        for v in comp.graph.vertices:
            rotation_parts[v] = comp_rotation.rotator(v)

    if decided_all and not violations:
        verdict = Outerspatial(NestedCertificate(RotationSystem(rotation_parts), certificates))
        _self_check(complex, verdict)
        return verdict

    # Salvage: an aspherical subcomplex is a sound obstruction regardless of
    # the hypothesis; search directly when the face count permits.
    if len(faces) <= ASPHERICAL_SEARCH_MAX_FACES:
        from . import oracle
        found = oracle.find_aspherical_subcomplex(complex)
        if found is not None:
            face_ids, sclass = found
            verdict = NotOuterspatial(AsphericalSubcomplex(face_ids, sclass))
            _self_check(complex, verdict)
            return verdict
    return HypothesisViolated(violations, notes)


def _decide_component(complex: TwoComplex, comp: TwoComplex,
                      violations: list[LinkViolation]):
    """Steps 1-5 on one component.

    Returns NotOuterspatial, or (rotation, component certificates) on
    success, or None when hypothesis violations block a sound verdict.
    """
    structures = _link_structures(comp)

    for v in sorted(structures):
        info = structures[v]
        if not info.outerplanarity.outerplanar:
            path = Path((v,), ())
            verdict = NotOuterspatial(
                NonOuterplanarLink(path, info.link, info.outerplanarity.witness))
            return verdict

    blocked = False
    for v in sorted(structures):
        info = structures[v]
        if not info.simple:
            violations.append(LinkViolation(v, "link graph is not simple"))
            blocked = True
        elif not info.two_connected:
            violations.append(LinkViolation(v, "link graph is not 2-connected"))
            blocked = True
    if blocked:
        return None

    chordal = find_chordal_faces(comp, structures)
    for fid in sorted(chordal):
        got = check_perfectly_chordal(comp, fid, structures, chordal)
        if isinstance(got, ChordalDefect):
            return NotOuterspatial(NonOuterplanarLink(got.path, got.link, got.witness))

    remainder = delete_faces(comp, set(chordal))
    if not _component_is_closed_surface(remainder):
        raise AssertionError("chord-free remainder is not a closed surface")
    sclass = classify_component(remainder)
    if not sclass.is_sphere:
        return NotOuterspatial(
            AsphericalSubcomplex(frozenset(remainder.face_ids()), sclass))

    rotation = _sphere_rotation_from_links(remainder)
    traced = trace_faces(comp.graph, rotation)
    if traced.genus != 0 or len(traced.orbits) != len(remainder.faces):
        raise AssertionError("sphere rotators traced inconsistently")

    cycles = {fid: f.edge_set for fid, f in comp.faces.items()}
    got = component_certificate(traced, cycles)
    if isinstance(got, CrossingPair):
        return _crossing_obstruction(complex, comp, traced, got)
    return rotation, [got]


def _crossing_obstruction(complex: TwoComplex, comp: TwoComplex,
                          traced: TracedFaces, pair: CrossingPair) -> NotOuterspatial:
    """Derive the bad path from a crossing pair of face boundaries.

    A minimal subpath of the second boundary runs from one side of the first
    to the other; contracting it (minus its end edges) merges the crossing
    into one vertex whose link holds a cycle with two non-parallel chords,
    hence a K4 minor.
    """
    c1 = comp.face(pair.first)
    c2 = comp.face(pair.second)
    side_a, _ = cycle_sides(traced, c1.edge_set)

    def edge_side(eid: str) -> int | None:
        if eid in c1.edge_set:
            return None
        return 0 if traced.orbit_index_of((eid, 0)) in side_a else 1

    steps = c2.steps
    k = len(steps)
    for i in range(k):
        s_i = edge_side(steps[i][1])
        if s_i is None:
            continue
        j = i + 1
        while j - i < k and edge_side(steps[j % k][1]) is None:
            j += 1
        if j - i >= k:
            break
        if edge_side(steps[j % k][1]) == s_i:
            continue
        inner_vertices = tuple(steps[(i + 1 + t) % k][0] for t in range(j - i))
        inner_edges = tuple(steps[(i + 1 + t) % k][1] for t in range(j - i - 1))
        path = Path(inner_vertices, inner_edges)
        contracted = contract_path(complex, path)
        merged = contracted_vertex_name(path, complex.graph.vertices)
        link = link_graph(contracted, merged)
        witness = find_minor(link.graph, "K4")
        if witness is None:
            raise AssertionError("crossing boundaries without K4 in the merged link")
        return NotOuterspatial(NonOuterplanarLink(path, link, witness))
    raise AssertionError("crossing pair admits no transversal subpath")


def decide_nested_plane(graph: Graph,
                        cycles: Mapping[str, Iterable[str]] | Iterable[tuple[str, Iterable[str]]],
                        *, cap: int | None = None) -> Verdict:
    """Decide existence of a nested plane embedding for a graph and cycle set.

    Reduces to the associated complex; on a hypothesis-violated outcome falls
    back to exhaustive embedding search when the instance is within the cap.
    """
    from . import oracle
    from .complexes import associated_complex
    complex = associated_complex(graph, cycles)
    verdict = decide_outerspatial(complex)
    if not isinstance(verdict, HypothesisViolated):
        return verdict
    cap = oracle.DEFAULT_CAP if cap is None else cap
    cycle_sets = {fid: f.edge_set for fid, f in complex.faces.items()}
    try:
        outcome = oracle.brute_force_nested(graph, cycle_sets, cap=cap)
    except oracle.CapExceededError as exc:
        return HypothesisViolated(verdict.violations,
                                  verdict.notes + (f"oracle fallback refused: {exc}",))
    if isinstance(outcome, NestedCertificate):
        return Outerspatial(outcome)
    return NotOuterspatial(outcome)


def verify_certificate(complex: TwoComplex, certificate: NestedCertificate) -> bool:
    """Independent certificate check.

    Re-traces the rotation system, checks genus zero per component, matches
    the designated outer faces, recomputes all interiors, and checks the
    forest covers every face boundary with laminar interiors.
    """
    graph = complex.graph
    try:
        certificate.rotation.validate_for(graph)
    except ValueError:
        return False
    comps = graph.components()
    by_vertices = {tuple(sorted(vs)): vs for vs in comps}
    cert_map = {c.vertices: c for c in certificate.components}
    if set(by_vertices) != set(cert_map):
        return False
    covered: set[str] = set()
    for key, comp_vs in sorted(by_vertices.items()):
        cert = cert_map[key]
        sub = graph.induced_subgraph(comp_vs)
        try:
            traced = trace_faces(sub, certificate.rotation.restricted_to(comp_vs))
        except ValueError:
            return False
        if traced.genus != 0:
            return False
        if not traced.orbits:
            outer_index = 0
            if cert.outer_darts != ():
                return False
        else:
            matches = [i for i, orbit in enumerate(traced.orbits)
                       if _normalize_orbit(orbit) == cert.outer_darts]
            if len(matches) != 1:
                return False
            outer_index = matches[0]
        comp_faces = {fid: f.edge_set for fid, f in complex.faces.items()
                      if set(f.vertices) <= comp_vs}
        if set(cert.parents) != set(comp_faces):
            return False
        covered |= set(comp_faces)
        forest = nesting_forest(traced, comp_faces, outer_face=outer_index)
        if isinstance(forest, CrossingPair):
            return False
        if not forest.is_laminar():
            return False
        if forest.parent != cert.parents:
            return False
    return covered == set(complex.face_ids())


def verify_obstruction(complex: TwoComplex, obstruction: Obstruction,
                       *, cap: int | None = None) -> bool:
    """Independent obstruction check (minor witness, surface, or oracle re-run)."""
    if isinstance(obstruction, NonOuterplanarLink):
        path = obstruction.path
        try:
            path.check_in(complex.graph)
            contracted = contract_path(complex, path)
            merged = contracted_vertex_name(path, complex.graph.vertices)
            link = link_graph(contracted, merged)
        except ValueError:
            return False
        return verify_minor_witness(link.graph, obstruction.witness)
    if isinstance(obstruction, AsphericalSubcomplex):
        if not obstruction.faces <= set(complex.face_ids()):
            return False
        sub = face_subcomplex(complex, obstruction.faces)
        if not sub.graph.is_connected() or not _component_is_closed_surface(sub):
            return False
        sclass = classify_component(sub)
        return sclass == obstruction.surface and sclass.euler != 2
    if isinstance(obstruction, ExhaustiveFailure):
        from . import oracle
        cycles = {fid: f.edge_set for fid, f in complex.faces.items()}
        cap = oracle.DEFAULT_CAP if cap is None else cap
        outcome = oracle.brute_force_nested(skeleton(complex), cycles, cap=cap)
        return isinstance(outcome, ExhaustiveFailure)
    return False


def face_subcomplex(complex: TwoComplex, face_ids: Iterable[str]) -> TwoComplex:
    """The subcomplex generated by a face subset: those faces plus their cells."""
    chosen = sorted(set(face_ids))
    faces = [complex.face(fid) for fid in chosen]
    edges: dict[str, tuple[str, str]] = {}
    vertices: set[str] = set()
    for f in faces:
        for eid in f.edge_ids:
            edges[eid] = complex.graph.endpoints(eid)
        vertices |= set(f.vertices)
    return TwoComplex(Graph(vertices, edges), faces)


def _self_check(complex: TwoComplex, verdict: Verdict) -> None:
    """Cheap soundness assertion before handing a verdict out."""
    if isinstance(verdict, Outerspatial):
        if not verify_certificate(complex, verdict.certificate):
            raise AssertionError("constructed certificate failed verification")
    elif isinstance(verdict, NotOuterspatial) and \
            not isinstance(verdict.obstruction, ExhaustiveFailure):
        if not verify_obstruction(complex, verdict.obstruction):
            raise AssertionError("constructed obstruction failed verification")
