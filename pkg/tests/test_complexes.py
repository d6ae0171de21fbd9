"""Core complex representation and space-minor operations."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from outerspatial import generators as gen
from outerspatial.complexes import (Face, Graph, Path, TwoComplex,
                                    associated_complex, complete_bipartite,
                                    complete_graph, cone, contract_path,
                                    contracted_vertex_name, delete_faces,
                                    graphs_match, link_graph, skeleton,
                                    split_components, validate, vertex_sum)


def K4():
    return complete_graph("abcd")


class TestValidate:
    def test_tetra_clean(self, tetra):
        assert validate(tetra) == []

    def test_loop_flagged(self):
        g = Graph(["v"], {"e": ("v", "v")})
        out = validate(TwoComplex(g, []))
        assert [p.kind for p in out] == ["loop"]
        assert "v" in out[0].message

    def test_parallel_flagged(self):
        g = Graph("uv", {"e1": ("u", "v"), "e2": ("u", "v")})
        kinds = [p.kind for p in validate(TwoComplex(g, []))]
        assert kinds == ["parallel-edge"]

    def test_repeated_vertex_walk_is_not_a_cycle(self):
        g = complete_graph("abc")
        face = Face.from_vertices(g, "f", ("a", "b", "a", "c"))
        out = validate(TwoComplex(g, [face]))
        assert [p.kind for p in out] == ["non-cycle-face"]

    def test_short_walk_is_not_a_cycle(self):
        g = Graph("uv", {"e1": ("u", "v"), "e2": ("u", "v")})
        face = Face.from_edges(g, "f", ("e1", "e2"))
        kinds = {p.kind for p in validate(TwoComplex(g, [face]))}
        assert "non-cycle-face" in kinds

    def test_duplicate_face_flagged(self):
        g = complete_graph("abc")
        f1 = Face.from_vertices(g, "f1", ("a", "b", "c"))
        f2 = Face.from_vertices(g, "f2", ("b", "c", "a"))
        out = validate(TwoComplex(g, [f1, f2]))
        assert [p.kind for p in out] == ["duplicate-face"]


class TestSkeleton:
    def test_tetra_skeleton_is_k4(self, tetra):
        assert skeleton(tetra) == K4()

    def test_cone_over_k4_skeleton(self):
        coned = gen.cone_over_graph(K4())
        sk = skeleton(coned)
        assert len(sk.vertices) == 5
        assert len(sk.edges) == 10
        apex = next(iter(sk.vertices - K4().vertices))
        assert sk.neighbors(apex) == K4().vertices

    def test_empty_complex(self):
        empty = TwoComplex(Graph([], {}), [])
        assert skeleton(empty) == Graph([], {})


class TestLinkGraph:
    def test_tetra_link_is_triangle(self, tetra):
        lg = link_graph(tetra, "a")
        assert sorted(lg.graph.vertices) == ["ab", "ac", "ad"]
        ends = sorted(tuple(sorted(uv)) for uv in lg.graph.edges.values())
        assert ends == [("ab", "ac"), ("ab", "ad"), ("ac", "ad")]
        assert lg.edge_face == {"abc": "abc", "abd": "abd", "acd": "acd"}

    def test_cone_apex_link_equals_base_skeleton(self):
        coned = gen.cone_over_graph(K4())
        apex = next(iter(coned.graph.vertices - K4().vertices))
        lg = link_graph(coned, apex)
        renamed = Graph((v[len(apex):] for v in lg.graph.vertices),
                        {le: (u[len(apex):], w[len(apex):])
                         for le, (u, w) in lg.graph.edges.items()})
        assert graphs_match(renamed, K4())

    def test_bipyramid_equator_link_has_one_chord(self, bipyramid4_equator):
        lg = link_graph(bipyramid4_equator, "a")
        assert sorted(lg.graph.vertices) == ["ab", "ad", "na", "sa"]
        ends = sorted(tuple(sorted(uv)) for uv in lg.graph.edges.values())
        assert ends == [("ab", "ad"), ("ab", "na"), ("ab", "sa"),
                        ("ad", "na"), ("ad", "sa")]
        chord = [le for le, uv in lg.graph.edges.items() if set(uv) == {"ab", "ad"}]
        assert [lg.edge_face[le] for le in chord] == ["eq"]

    def test_unknown_vertex(self, tetra):
        with pytest.raises(ValueError):
            link_graph(tetra, "zz")

    def test_degree_symmetry(self, bipyramid4_equator):
        c = bipyramid4_equator
        counts = c.edge_face_count()
        for eid, (u, v) in c.graph.edges.items():
            for w in (u, v):
                lg = link_graph(c, w)
                assert lg.graph.degree(eid) == counts[eid]


class TestCone:
    def test_single_edge(self):
        base = TwoComplex(Graph("uv", {"uv": ("u", "v")}), [])
        coned = cone(base)
        assert len(coned.graph.vertices) == 3
        assert len(coned.faces) == 1
        (face,) = coned.faces.values()
        assert set(face.vertices) == {"t", "u", "v"}

    def test_k4_counts(self):
        coned = gen.cone_over_graph(K4())
        assert len(coned.graph.vertices) == 5
        assert len(coned.graph.edges) == 10
        assert len(coned.faces) == 6
        assert all(len(f) == 3 for f in coned.faces.values())

    def test_loop_rejected(self):
        g = Graph(["v"], {"e": ("v", "v")})
        with pytest.raises(ValueError):
            cone(TwoComplex(g, []))

    def test_cone_link_law(self, tetra, bipyramid4):
        # The link at the top is the base 1-skeleton, under the spoke renaming.
        for base in (tetra, bipyramid4, TwoComplex(complete_bipartite("uv", "xyz"), [])):
            coned = cone(base, apex="TOP")
            lg = link_graph(coned, "TOP")
            renamed = Graph((v[3:] for v in lg.graph.vertices),
                            {le: (a[3:], b[3:]) for le, (a, b) in lg.graph.edges.items()})
            assert graphs_match(renamed, skeleton(base))


class TestContractPath:
    def test_trivial_path_identity(self, tetra):
        assert contract_path(tetra, Path(("a",), ())) == tetra

    def test_tetra_edge_contraction(self, tetra):
        out = contract_path(tetra, Path.from_vertices(tetra.graph, ("a", "b")))
        assert len(out.graph.vertices) == 3
        merged = contracted_vertex_name(Path(("a", "b"), ("ab",)), tetra.graph.vertices)
        assert merged in out.graph.vertices
        degenerate = [f for f in out.faces.values() if not f.is_genuine_cycle()]
        assert sorted(f.face_id for f in degenerate) == ["abc", "abd"]
        assert all(len(f) == 2 for f in degenerate)

    def test_vertex_sum_law(self, tetra, bipyramid4_equator):
        for c in (tetra, bipyramid4_equator):
            for eid in sorted(c.graph.edges):
                u, v = c.graph.endpoints(eid)
                path = Path((u, v), (eid,))
                merged = contracted_vertex_name(path, c.graph.vertices)
                actual = link_graph(contract_path(c, path), merged)
                pairing = {fid: fid for fid in c.faces_with_edge(eid)}
                expected = vertex_sum(link_graph(c, u).graph, link_graph(c, v).graph,
                                      eid, pairing)
                assert graphs_match(actual.graph, expected)

    def test_not_a_path_rejected(self, tetra):
        with pytest.raises(ValueError):
            contract_path(tetra, Path(("a", "b"), ("cd",)))


class TestDeleteFaces:
    def test_delete_all_leaves_bare_skeleton(self, tetra):
        out = delete_faces(tetra, tetra.face_ids())
        assert out.graph == skeleton(tetra)
        assert out.faces == {}

    def test_delete_nothing(self, tetra):
        assert delete_faces(tetra, ()) == tetra

    def test_delete_equator_restores_bipyramid(self, bipyramid4_equator, bipyramid4):
        assert delete_faces(bipyramid4_equator, {"eq"}) == bipyramid4

    def test_unknown_face(self, tetra):
        with pytest.raises(ValueError):
            delete_faces(tetra, {"nope"})

    def test_composition(self, bipyramid4_equator):
        c = bipyramid4_equator
        s, t = {"eq", "nab"}, {"scd"}
        assert delete_faces(delete_faces(c, s), t) == delete_faces(c, s | t)


class TestVertexSum:
    def test_two_triangles_make_a_square(self):
        t1 = Graph("vab", {"va": ("v", "a"), "vb": ("v", "b"), "ab": ("a", "b")})
        t2 = Graph("vxy", {"vx": ("v", "x"), "vy": ("v", "y"), "xy": ("x", "y")})
        out = vertex_sum(t1, t2, "v", {"va": "vx", "vb": "vy"})
        assert out.vertices == frozenset("abxy")
        assert len(out.edges) == 4
        assert all(out.degree(w) == 2 for w in out.vertices)
        assert out.is_connected()

    def test_star_sum_is_perfect_matching(self):
        s1 = complete_bipartite(["v"], ["a1", "a2", "a3"])
        s2 = complete_bipartite(["v"], ["b1", "b2", "b3"])
        pairing = {f"va{i}": f"vb{i}" for i in (1, 2, 3)}
        out = vertex_sum(s1, s2, "v", pairing)
        assert len(out.edges) == 3
        assert all(out.degree(w) == 1 for w in out.vertices)

    def test_bad_pairing_rejected(self):
        t1 = Graph("vab", {"va": ("v", "a"), "vb": ("v", "b")})
        t2 = Graph("vxy", {"vx": ("v", "x"), "vy": ("v", "y")})
        with pytest.raises(ValueError):
            vertex_sum(t1, t2, "v", {"va": "vx", "vb": "vx"})
        with pytest.raises(ValueError):
            vertex_sum(t1, t2, "v", {"va": "vx"})


class TestAssociatedComplex:
    def test_k4_triangles_is_tetra(self, tetra):
        cycles = {"".join(t): t for t in (("a", "b", "c"), ("a", "b", "d"),
                                          ("a", "c", "d"), ("b", "c", "d"))}
        assert associated_complex(K4(), cycles) == tetra

    def test_no_cycles(self):
        out = associated_complex(K4(), {})
        assert out.faces == {}

    def test_non_cycle_rejected(self):
        with pytest.raises(ValueError):
            associated_complex(K4(), {"f": ("a", "b")})

    def test_duplicate_cycle_rejected(self):
        with pytest.raises(ValueError):
            associated_complex(K4(), {"f": ("a", "b", "c"), "g": ("b", "c", "a")})


class TestComponents:
    def test_split(self):
        g = Graph("abcxyz", {"ab": ("a", "b"), "bc": ("b", "c"), "ca": ("c", "a"),
                             "xy": ("x", "y"), "yz": ("y", "z"), "zx": ("z", "x")})
        c = associated_complex(g, {"f1": ("a", "b", "c"), "f2": ("x", "y", "z")})
        parts = split_components(c)
        assert [sorted(p.graph.vertices) for p in parts] == [["a", "b", "c"], ["x", "y", "z"]]
        assert [list(p.faces) for p in parts] == [["f1"], ["f2"]]


@st.composite
def _rotated_walk(draw):
    n = draw(st.integers(min_value=3, max_value=8))
    names = [f"v{i}" for i in range(n)]
    g = Graph(names, {f"e{i}": (names[i], names[(i + 1) % n]) for i in range(n)})
    steps = Face.from_vertices(g, "f", names).steps
    rot = draw(st.integers(min_value=0, max_value=n - 1))
    reflect = draw(st.booleans())
    variant = steps[rot:] + steps[:rot]
    if reflect:
        k = len(variant)
        variant = tuple(
            (variant[(k - j) % k][0], variant[(k - j - 1) % k][1],
             1 - variant[(k - j - 1) % k][2])
            for j in range(k))
    return steps, variant


@given(_rotated_walk())
@settings(max_examples=60, deadline=None)
def test_canonicalization_idempotent_and_rotation_invariant(data):
    canonical, variant = data
    assert Face("f", variant).steps == canonical
    assert Face("f", canonical).steps == canonical
