import pytest

from polaris import fixtures as fx
from polaris.cycles import CrossCheckError, branch_counts
from polaris.graph import multiplicity, reduce_graph
from polaris.limittree import limit_assignments
from polaris.polartype import (
    AnCurve,
    assemble_from_heights,
    assemble_from_limit_tree,
    canonicalize,
    equals,
    expected_branch_counts,
    polar_multiplicity,
)


def curve_data(pt):
    return sorted((c.n, c.site_kind, c.site) for c in pt.curves)


class TestLimitRoute:
    def test_fig2(self, g_fig2):
        pt = canonicalize(assemble_from_limit_tree(g_fig2))
        assert pt.bunches == ()
        assert [c.n for c in pt.curves] == [3, 5, 5]
        a5a, a5b = 1, 2
        assert pt.curve_contact(a5a, a5b) == 3
        assert pt.curve_contact(0, a5a) == 1
        assert pt.curve_contact(0, a5b) == 1

    def test_note(self, g_note):
        pt = canonicalize(assemble_from_limit_tree(g_note))
        assert [(b.vertex, b.degree, b.lines) for b in pt.bunches] == [("x1", 3, 4)]
        assert [c.n for c in pt.curves] == [3, 4, 5]
        by_n = {c.n: i for i, c in enumerate(pt.curves)}
        assert pt.curve_contact(by_n[4], by_n[5]) == 2
        assert pt.curve_contact(by_n[3], by_n[4]) == 1
        assert pt.curve_contact(by_n[3], by_n[5]) == 1
        # every line has contact 1 with everything
        for i in range(4):
            assert all(pt.contact[i][j] == 1 for j in range(len(pt.contact)) if j != i)

    def test_veronese(self):
        for n in (2, 3, 4, 7):
            pt = assemble_from_limit_tree(fx.g_ver(n))
            assert [(b.vertex, b.lines) for b in pt.bunches] == [("a", 2 * n - 2)]
            assert pt.curves == ()

    def test_g32(self, g_32):
        pt = canonicalize(assemble_from_limit_tree(g_32))
        assert [(b.vertex, b.lines) for b in pt.bunches] == [("a", 2)]
        assert curve_data(pt) == [(2, "arc", ("a", "b"))]

    def test_join(self, g_join):
        pt = canonicalize(assemble_from_limit_tree(g_join))
        assert pt.bunches == ()
        assert [c.n for c in pt.curves] == [5, 5]
        assert pt.curve_contact(0, 1) == 2

    def test_a_chains(self):
        for k in range(2, 7):
            pt = assemble_from_limit_tree(fx.g_a(k))
            assert pt.bunches == ()
            assert [c.n for c in pt.curves] == [k]
        pt1 = assemble_from_limit_tree(fx.g_a(1))
        assert [(b.vertex, b.lines) for b in pt1.bunches] == [("a1", 2)]
        assert pt1.curves == ()


class TestHeightsRoute:
    def test_g32(self, g_32):
        pt = canonicalize(assemble_from_heights(g_32))
        assert [(b.vertex, b.lines) for b in pt.bunches] == [("a", 2)]
        assert curve_data(pt) == [(2, "arc", ("a", "b"))]

    def test_fig2_sites(self, g_fig2):
        pt = assemble_from_heights(g_fig2)
        assert curve_data(pt) == [
            (3, "vertex", ("d",)),
            (5, "vertex", ("b",)),
            (5, "vertex", ("b",)),
        ]

    def test_note_sites(self, g_note):
        pt = assemble_from_heights(g_note)
        assert curve_data(pt) == [
            (3, "vertex", ("r",)),
            (4, "arc", ("p", "q")),
            (5, "vertex", ("v",)),
        ]


class TestRouteAgreement:
    @pytest.mark.parametrize("name", sorted(fx.FIXTURES))
    def test_routes_agree(self, name):
        g = fx.FIXTURES[name][1]
        assert equals(assemble_from_limit_tree(g), assemble_from_heights(g))

    def test_all_assignments_agree(self, g_fig2):
        gr = reduce_graph(g_fig2).graph
        types = [
            assemble_from_limit_tree(g_fig2, a) for a in limit_assignments(gr)
        ]
        assert len(types) == 6
        for pt in types[1:]:
            assert equals(types[0], pt)

    def test_canonical_self_equality(self, g_ver4):
        pt = assemble_from_limit_tree(g_ver4)
        assert equals(pt, pt)


class TestCounts:
    @pytest.mark.parametrize("name", sorted(fx.FIXTURES))
    def test_expected_branch_counts(self, name):
        g = fx.FIXTURES[name][1]
        pt = assemble_from_limit_tree(g)
        assert expected_branch_counts(pt, g) == branch_counts(g)

    def test_note_totals(self, g_note):
        pt = assemble_from_limit_tree(g_note)
        assert expected_branch_counts(pt, g_note) == {
            "x1": 4, "p": 1, "q": 1, "v": 2, "r": 2,
            "w": 0, "x2": 0, "x3": 0, "x4": 0,
        }

    @pytest.mark.parametrize("name", sorted(fx.FIXTURES))
    def test_polar_multiplicity(self, name):
        g = fx.FIXTURES[name][1]
        pt = assemble_from_limit_tree(g)
        assert polar_multiplicity(pt) == 2 * multiplicity(g) - 2

    def test_note_value(self, g_note):
        assert polar_multiplicity(assemble_from_limit_tree(g_note)) == 10

    def test_fig2_value(self, g_fig2):
        assert polar_multiplicity(assemble_from_limit_tree(g_fig2)) == 6


class TestInvariants:
    def test_an_site_height_consistency(self):
        with pytest.raises(CrossCheckError):
            AnCurve(n=4, site_kind="vertex", site=("v",), site_height=2)
        with pytest.raises(CrossCheckError):
            AnCurve(n=3, site_kind="arc", site=("a", "b"), site_height=2)

    def test_contact_matrix_symmetric_with_unit_lines(self, g_note):
        pt = assemble_from_limit_tree(g_note)
        n = len(pt.contact)
        for i in range(n):
            assert pt.contact[i][i] == 0
            for j in range(n):
                assert pt.contact[i][j] == pt.contact[j][i]

    def test_ultrametric(self, g_note):
        pt = assemble_from_limit_tree(g_note)
        n = len(pt.contact)
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if len({i, j, k}) < 3:
                        continue
                    assert pt.contact[i][k] >= min(
                        pt.contact[i][j], pt.contact[j][k]
                    )
