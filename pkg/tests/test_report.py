import json
import pathlib
from fractions import Fraction as F

import pytest

from polaris import fixtures as fx
from polaris.report import analyze_graph, export_dot, rational_str

GOLDEN = pathlib.Path(__file__).resolve().parent.parent / "fixtures" / "golden"


class TestRationalStr:
    def test_zero(self):
        assert rational_str(F(0)) == "0"

    def test_normalized(self):
        assert rational_str(F(14, 10)) == "7/5"
        assert rational_str(F(-3, 9)) == "-1/3"
        assert rational_str(2) == "2/1"


class TestReport:
    def test_key_order_fixed(self, g_32):
        report = analyze_graph(g_32)
        assert list(report) == [
            "graph",
            "validation",
            "heights",
            "tangent_cone",
            "multiplicity",
            "embdim",
            "fundamental_cycle_self_intersection",
            "cycles",
            "tyurina_components",
            "reduction",
            "limit_trees",
            "polar_type",
            "scott_tree",
            "delta",
            "model",
            "verification",
        ]

    def test_no_floats_anywhere(self, g_note):
        def walk(x):
            assert not isinstance(x, float)
            if isinstance(x, dict):
                for v in x.values():
                    walk(v)
            elif isinstance(x, list):
                for v in x:
                    walk(v)

        walk(analyze_graph(g_note))

    def test_polar_type_block(self, g_note):
        pt = analyze_graph(g_note)["polar_type"]
        assert pt["bunches"] == [{"vertex": "x1", "m": 3, "lines": 4}]
        assert [c["n"] for c in pt["curves"]] == [3, 4, 5]
        assert pt["polar_multiplicity"] == 10
        assert pt["delta"] == 17
        assert len(pt["contacts"]) == 7

    def test_deltas_equal_in_passing_report(self, g_join):
        report = analyze_graph(g_join)
        assert report["delta"]["cycles"] == report["delta"]["deformation"]

    @pytest.mark.parametrize(
        "name", ["g_32", "g_ver4", "g_fig2", "g_note", "g_join", "g_a5"]
    )
    def test_golden_reports(self, name):
        report = analyze_graph(fx.FIXTURES[name][1])
        rendered = json.dumps(report, indent=2) + "\n"
        golden = (GOLDEN / f"{name}.analyze.json").read_text(encoding="utf-8")
        assert rendered == golden

    def test_smooth_reduction_report(self, g_ver4):
        report = analyze_graph(g_ver4)
        assert report["reduction"]["smooth"] is True
        assert report["limit_trees"]["trees"] == []
        assert report["polar_type"]["curves"] == []


class TestDotExport:
    def test_graph_fig2(self, g_fig2):
        dot = export_dot(g_fig2, "graph")
        assert dot.count("[label=") == 9
        assert dot.count("--") == 8
        assert dot.count("shape=star") == 4
        golden = (GOLDEN / "g_fig2.graph.dot").read_text(encoding="utf-8")
        assert dot == golden

    def test_limit_tree_note(self, g_note):
        dot = export_dot(g_note, "limit-tree")
        for label in ('l=4', 'l=3', 'l=5'):
            assert label in dot
        assert '"x1,x4;x2": 2' in dot
        golden = (GOLDEN / "g_note.limit-tree.dot").read_text(encoding="utf-8")
        assert dot == golden

    def test_scott_ver4(self, g_ver4):
        dot = export_dot(g_ver4, "scott")
        assert 'label="degree 4"' in dot
        assert "--" not in dot

    def test_scott_join_golden(self, g_join):
        dot = export_dot(g_join, "scott")
        golden = (GOLDEN / "g_join.scott.dot").read_text(encoding="utf-8")
        assert dot == golden

    def test_smooth_limit_tree(self, g_ver4):
        dot = export_dot(g_ver4, "limit-tree")
        assert "no limit tree" in dot

    def test_unknown_target(self, g_32):
        with pytest.raises(ValueError):
            export_dot(g_32, "nonsense")
