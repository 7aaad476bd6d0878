import pytest

from polaris import fixtures as fx
from polaris.graph import (
    ParseError,
    ResolutionGraph,
    canonical_key,
    central_elements,
    embdim,
    graph_to_text,
    heights,
    isomorphic,
    multiplicity,
    parse_graph,
    reduce_graph,
    tangent_cone_data,
    tyurina_components,
    validate_minimal,
)


class TestParse:
    def test_two_vertex(self):
        g = parse_graph("vertex a 3\nvertex b 2\nedge a b\n")
        assert g.weight == {"a": 3, "b": 2}
        assert g.edges == (("a", "b"),)

    def test_single_vertex(self):
        g = parse_graph("vertex a 4")
        assert g.vertices == ("a",)
        assert g.edges == ()

    def test_declaration_order_irrelevant(self):
        g1 = parse_graph("vertex a 3\nvertex b 2\nedge a b")
        g2 = parse_graph("edge a b\nvertex b 2\nvertex a 3")
        assert g1 == g2

    def test_comments_and_blanks_ignored(self):
        g = parse_graph("# header\n\nvertex a 2\n  \n# done\n")
        assert g.vertices == ("a",)

    def test_unknown_vertex_in_edge(self):
        with pytest.raises(ParseError) as exc:
            parse_graph("edge a b")
        assert exc.value.line == 1
        assert exc.value.token == "a"

    def test_duplicate_vertex(self):
        with pytest.raises(ParseError, match="duplicate vertex"):
            parse_graph("vertex a 2\nvertex a 3")

    def test_duplicate_edge(self):
        text = "vertex a 2\nvertex b 2\nedge a b\nedge b a"
        with pytest.raises(ParseError, match="duplicate edge"):
            parse_graph(text)

    def test_self_loop(self):
        with pytest.raises(ParseError, match="self-loop"):
            parse_graph("vertex a 2\nedge a a")

    def test_bad_weight(self):
        with pytest.raises(ParseError, match="positive integer"):
            parse_graph("vertex a 0")

    def test_malformed_line(self):
        with pytest.raises(ParseError):
            parse_graph("vertex a")
        with pytest.raises(ParseError, match="unknown directive"):
            parse_graph("node a 2")

    def test_round_trip_text(self, g_note):
        assert parse_graph(graph_to_text(g_note)) == g_note


class TestValidate:
    def test_fixtures_valid(self):
        for name in fx.fixture_names():
            assert validate_minimal(fx.FIXTURES[name][1]) == []

    def test_triangle_not_tree(self):
        g = ResolutionGraph.build(
            {"a": 3, "b": 3, "c": 3}, [("a", "b"), ("b", "c"), ("a", "c")]
        )
        assert any("not a tree" in v for v in validate_minimal(g))

    def test_weight_below_two(self):
        g = ResolutionGraph.build({"a": 1}, [])
        assert any("below 2" in v for v in validate_minimal(g))

    def test_weight_below_valence(self):
        g = ResolutionGraph.build(
            {"c": 2, "a": 2, "b": 2, "d": 2},
            [("c", "a"), ("c", "b"), ("c", "d")],
        )
        assert any("below valence" in v for v in validate_minimal(g))

    def test_all_violations_reported(self):
        g = ResolutionGraph.build({"a": 1, "b": 1}, [("a", "b")])
        assert len(validate_minimal(g)) == 2


class TestHeights:
    def test_fig2(self, g_fig2):
        s = heights(g_fig2)
        assert {v: s[v] for v in ("x1", "x2", "x3", "x4")} == dict.fromkeys(
            ("x1", "x2", "x3", "x4"), 1
        )
        assert {v: s[v] for v in ("a", "c", "d", "e")} == dict.fromkeys(
            ("a", "c", "d", "e"), 2
        )
        assert s["b"] == 3

    def test_single_vertex(self, g_ver4):
        assert heights(g_ver4) == {"a": 1}

    def test_note(self, g_note):
        s = heights(g_note)
        assert s["v"] == 3
        assert all(s[x] == 2 for x in ("p", "q", "r", "w"))


class TestTangentCone:
    def test_veronese(self):
        for n in (2, 3, 4):
            tc, deg = tangent_cone_data(fx.g_ver(n))
            assert tc == ("a",)
            assert deg == {"a": n}

    def test_g32(self, g_32):
        _, deg = tangent_cone_data(g_32)
        assert deg == {"a": 2, "b": 1}

    def test_fig2(self, g_fig2):
        tc, deg = tangent_cone_data(g_fig2)
        assert set(tc) == {"x1", "x2", "x3", "x4"}
        assert all(m == 1 for m in deg.values())


class TestMultiplicity:
    def test_veronese(self):
        assert multiplicity(fx.g_ver(5)) == 5
        assert embdim(fx.g_ver(5)) == 6

    def test_note(self, g_note):
        assert multiplicity(g_note) == 6
        assert embdim(g_note) == 7

    def test_fig2(self, g_fig2):
        assert multiplicity(g_fig2) == 4


class TestTyurina:
    def test_fig2(self, g_fig2):
        comps = tyurina_components(g_fig2)
        vertex_sets = sorted(set(c.vertices) for c in comps)
        assert vertex_sets == [{"a", "b", "c", "e"}, {"d"}]

    def test_single_vertex_empty(self, g_ver4):
        assert tyurina_components(g_ver4) == []

    def test_join(self, g_join):
        comps = tyurina_components(g_join)
        assert sorted(set(c.vertices) for c in comps) == [{"t1", "t2", "t3", "u", "v"}]

    def test_components_are_valid(self, g_note):
        for c in tyurina_components(g_note):
            assert validate_minimal(c) == []

    def test_boundary_edges_equal_multiplicity(self, g_note):
        for c in tyurina_components(g_note):
            boundary = sum(
                1
                for a, b in g_note.edges
                if (a in c.vertices) != (b in c.vertices)
            )
            assert boundary == multiplicity(c)

    def test_heights_restrict(self, g_note):
        s = heights(g_note)
        for c in tyurina_components(g_note):
            s_c = heights(c)
            assert all(s[v] == s_c[v] + 1 for v in c.vertices)


class TestCentral:
    def test_g32_single_arc(self, g_32):
        cv, arcs = central_elements(g_32)
        assert cv == ()
        assert arcs == (("a", "b"),)

    def test_fig2(self, g_fig2):
        cv, arcs = central_elements(g_fig2)
        assert set(cv) == {"b", "d"}
        assert arcs == ()

    def test_note(self, g_note):
        cv, arcs = central_elements(g_note)
        assert set(cv) == {"v", "r"}
        assert arcs == (("p", "q"),)


class TestReduce:
    def test_note(self, g_note):
        red = reduce_graph(g_note)
        assert not red.smooth
        assert red.graph.weight["x1"] == 2
        assert {v: w for v, w in red.graph.weight.items() if v != "x1"} == {
            v: w for v, w in g_note.weight.items() if v != "x1"
        }

    def test_fig2_already_reduced(self, g_fig2):
        assert reduce_graph(g_fig2).graph == g_fig2

    def test_veronese_smooth(self):
        for n in (2, 3, 4):
            assert reduce_graph(fx.g_ver(n)).smooth

    def test_preserves_analysis(self, g_note):
        red = reduce_graph(g_note).graph
        assert tangent_cone_data(red)[0] == tangent_cone_data(g_note)[0]
        assert heights(red) == heights(g_note)
        assert central_elements(red) == central_elements(g_note)
        assert sorted(c.vertices for c in tyurina_components(red)) == sorted(
            c.vertices for c in tyurina_components(g_note)
        )


class TestIsomorphism:
    def test_relabeling(self, g_fig2):
        mapping = {v: f"z{i}" for i, v in enumerate(g_fig2.vertices)}
        relabeled = ResolutionGraph.build(
            {mapping[v]: g_fig2.weight[v] for v in g_fig2.vertices},
            [(mapping[a], mapping[b]) for a, b in g_fig2.edges],
        )
        assert isomorphic(g_fig2, relabeled)
        assert canonical_key(g_fig2) == canonical_key(relabeled)

    def test_weights_matter(self):
        g1 = ResolutionGraph.build({"a": 3, "b": 2}, [("a", "b")])
        g2 = ResolutionGraph.build({"a": 2, "b": 2}, [("a", "b")])
        assert not isomorphic(g1, g2)

    def test_shape_matters(self):
        chain = fx.g_a(4)
        star = ResolutionGraph.build(
            {"c": 3, "a": 2, "b": 2, "d": 2},
            [("c", "a"), ("c", "b"), ("c", "d")],
        )
        assert not isomorphic(chain, star)
