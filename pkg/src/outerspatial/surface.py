"""Recognize and classify the closed surfaces among 2-complexes.

A component realizes a closed surface exactly when every link graph is a
single cycle.  Classification is by Euler characteristic plus an orientation
search over the face boundaries: the component is orientable when every face
can be directed so that each edge is traversed once in each direction.
"""

from __future__ import annotations

from .complexes import TwoComplex, link_graph, split_components


class NotASurfaceError(ValueError):
    pass


class SurfaceClass:
    """Classification of one connected component."""

    def __init__(self, is_surface: bool, euler: int,
                 orientable: bool | None = None):
        self.is_surface = is_surface
        self.euler = euler
        self.orientable = orientable

    @property
    def is_sphere(self) -> bool:
        return self.is_surface and self.euler == 2

    @property
    def genus(self) -> int | None:
        if self.is_surface and self.orientable:
            return (2 - self.euler) // 2
        return None

    @property
    def crosscaps(self) -> int | None:
        if self.is_surface and self.orientable is False:
            return 2 - self.euler
        return None

    @property
    def kind(self) -> str:
        if not self.is_surface:
            return "not-a-surface"
        if self.is_sphere:
            return "sphere"
        if self.orientable:
            return f"orientable genus {self.genus}"
        return f"non-orientable crosscaps {self.crosscaps}"

    def __repr__(self) -> str:
        return f"SurfaceClass({self.kind}, euler {self.euler})"

    def __eq__(self, other) -> bool:
        return (isinstance(other, SurfaceClass)
                and (self.is_surface, self.euler, self.orientable)
                == (other.is_surface, other.euler, other.orientable))


def euler_characteristic(complex: TwoComplex) -> int:
    return (len(complex.graph.vertices) - len(complex.graph.edges)
            + len(complex.faces))


def _link_is_single_cycle(complex: TwoComplex, v: str) -> bool:
    lg = link_graph(complex, v).graph
    if not lg.vertices:
        return False
    degs = [lg.degree(u) for u in lg.vertices]
    return all(d == 2 for d in degs) and lg.is_connected() and not lg.loops()


def _component_is_closed_surface(component: TwoComplex) -> bool:
    return all(_link_is_single_cycle(component, v)
               for v in sorted(component.graph.vertices))


def is_closed_surface(complex: TwoComplex) -> list[tuple[TwoComplex, bool]]:
    """Per component: does the realisation close up into a surface?"""
    return [(comp, _component_is_closed_surface(comp))
            for comp in split_components(complex)]


def _orient_faces(component: TwoComplex, first: str | None = None) -> dict[str, int] | None:
    """Direct every face boundary so each edge runs once in each direction.

    Returns face id -> 0/1 (keep or reverse the stored walk), or None when no
    consistent orientation exists.  The outcome is start-face independent;
    `first` only reorders the search for tests.
    """
    face_ids = sorted(component.face_ids())
    if first is not None:
        face_ids = [first] + [f for f in face_ids if f != first]
    # Each edge lies in exactly two faces on a closed surface.
    edge_faces: dict[str, list[tuple[str, int]]] = {}
    for fid in face_ids:
        f = component.face(fid)
        for i, (_, eid, o) in enumerate(f.steps):
            edge_faces.setdefault(eid, []).append((fid, o))
    orientation: dict[str, int] = {}
    for start in face_ids:
        if start in orientation:
            continue
        orientation[start] = 0
        stack = [start]
        while stack:
            fid = stack.pop()
            f = component.face(fid)
            flip = orientation[fid]
            for _, eid, o in f.steps:
                here = o ^ flip
                others = [(g, oo) for g, oo in edge_faces[eid] if g != fid]
                if len(others) != 1:
                    return None
                gid, go = others[0]
                # The partner must traverse eid in the opposite direction.
                need = (go ^ (1 - here)) & 1
                if gid in orientation:
                    if orientation[gid] != need:
                        return None
                else:
                    orientation[gid] = need
                    stack.append(gid)
    return orientation


def classify_component(component: TwoComplex) -> SurfaceClass:
    """Classify one component; raises NotASurfaceError when links are not cycles."""
    if not _component_is_closed_surface(component):
        raise NotASurfaceError("component is not a closed surface")
    chi = euler_characteristic(component)
    orientable = _orient_faces(component) is not None
    if orientable and chi % 2:
        raise AssertionError("orientable surface with odd Euler characteristic")
    return SurfaceClass(True, chi, orientable)


def classify_surface(complex: TwoComplex) -> list[tuple[TwoComplex, SurfaceClass]]:
    """Classify every component; raises when some component is not a surface."""
    return [(comp, classify_component(comp)) for comp in split_components(complex)]


def survey_surfaces(complex: TwoComplex) -> list[tuple[TwoComplex, SurfaceClass]]:
    """Total variant: non-surface components get a not-a-surface class."""
    out = []
    for comp in split_components(complex):
        if _component_is_closed_surface(comp):
            out.append((comp, classify_component(comp)))
        else:
            out.append((comp, SurfaceClass(False, euler_characteristic(comp))))
    return out
