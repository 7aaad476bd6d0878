from fractions import Fraction as F

import pytest

from polaris import fixtures as fx
from polaris.polartype import (
    AnCurve,
    Bunch,
    PolarType,
    assemble_from_limit_tree,
    canonicalize,
)
from polaris.realize import (
    PuiseuxBranch,
    TruncationError,
    branch_contact_by_blowups,
    realize,
    verify,
)

b = PuiseuxBranch.of


class TestPuiseuxBranch:
    def test_validation(self):
        with pytest.raises(ValueError, match="increasing"):
            PuiseuxBranch(((F(2), F(1)), (F(2), F(1))))
        with pytest.raises(ValueError, match="positive"):
            PuiseuxBranch(((F(0), F(1)),))
        with pytest.raises(ValueError, match="denominators"):
            PuiseuxBranch(((F(1, 3), F(1)),))
        with pytest.raises(ValueError, match="last"):
            PuiseuxBranch(((F(3, 2), F(1)), (F(2), F(1))))

    def test_ramification(self):
        assert b((1, 1)).ramification() == 1
        assert b((2, 1), (F(5, 2), 1)).ramification() == 2

    def test_zero_coefficients_dropped(self):
        assert b((1, 1), (2, 0)).terms == ((F(1), F(1)),)


class TestBlowupContact:
    def test_distinct_tangents(self):
        assert branch_contact_by_blowups(b((1, 1)), b((1, -1))) == 1

    def test_cube_pair(self):
        assert branch_contact_by_blowups(b((3, 1)), b((3, -1))) == 3

    def test_smooth_vs_half_integer_diverging_at_two(self):
        left = b((2, -1), (3, -1))
        right = b((F(5, 2), 1))
        assert branch_contact_by_blowups(left, right) == 2

    def test_shared_quadratic_separates_at_third_blowup(self):
        # sharing the x^2 coefficient forces three common infinitely near points
        left = b((2, 1), (3, 1))
        right = b((2, 1), (F(5, 2), 1))
        assert branch_contact_by_blowups(left, right) == 3

    def test_equals_difference_order_for_smooth_branches(self):
        import random

        rng = random.Random(9)
        for _ in range(40):
            shared = [(e, rng.randint(-4, 4)) for e in range(1, 4)]
            k = rng.randint(1, 6)
            t1 = dict(shared)
            t2 = dict(shared)
            t1[k] = t1.get(k, 0) + rng.randint(1, 5)
            b1 = b(*((e, c) for e, c in sorted(t1.items())))
            b2 = b(*((e, c) for e, c in sorted(t2.items())))
            if b1.terms == b2.terms:
                continue
            diff_order = min(
                e
                for e in set(t1) | set(t2)
                if t1.get(e, 0) != t2.get(e, 0)
            )
            got = branch_contact_by_blowups(b1, b2)
            assert got == diff_order
            assert got == branch_contact_by_blowups(b2, b1)

    def test_symmetric_with_half_integers(self):
        x = b((1, 2), (2, 1), (F(5, 2), 1))
        y = b((1, 2), (3, 1))
        assert branch_contact_by_blowups(x, y) == branch_contact_by_blowups(y, x)

    def test_identical_rejected(self):
        with pytest.raises(ValueError):
            branch_contact_by_blowups(b((1, 1)), b((1, 1)))

    def test_truncation_error(self):
        with pytest.raises(TruncationError):
            branch_contact_by_blowups(b((1, 1)), b((1, 1), (9, 1)), max_steps=3)


def standalone(n, height, kind="vertex"):
    site = ("v",) if kind == "vertex" else ("a", "b")
    return PolarType(
        bunches=(),
        curves=(AnCurve(n=n, site_kind=kind, site=site, site_height=height),),
        contact=((0,),),
        polar_multiplicity=2,
    )


class TestRealize:
    def test_standalone_a5(self):
        model = realize(standalone(5, 3))
        assert model.factored_string() == "(y - x^3)*(y + x^3)"
        assert sorted(model.product.items()) == [
            ((0, 2), F(1)),
            ((6, 0), F(-1)),
        ]

    def test_p2_bunch(self):
        pt = PolarType(
            bunches=(Bunch("a", 2),),
            curves=(),
            contact=((0, 1), (1, 0)),
            polar_multiplicity=2,
        )
        assert realize(pt).factored_string() == "(y - x)*(y + x)"

    def test_standalone_even(self):
        model = realize(standalone(4, 2, kind="arc"))
        assert model.factored_string() == "((y)^2 - x^5)"
        sheets = model.components[0].sheets
        assert sheets[0].terms == ((F(5, 2), F(1)),)

    def test_note_model_verifies(self, g_note):
        pt = canonicalize(assemble_from_limit_tree(g_note))
        model = realize(pt)
        report = verify(model, pt)
        assert report.ok
        assert report.mismatches == ()

    def test_note_a5_a4_sheet_contact_two(self, g_note):
        pt = canonicalize(assemble_from_limit_tree(g_note))
        model = realize(pt)
        comps = {mc.n: mc for mc in model.components if mc.kind == "an"}
        for s1 in comps[5].sheets:
            for s2 in comps[4].sheets:
                assert branch_contact_by_blowups(s1, s2) == 2

    def test_fig2_contact_three_pair(self, g_fig2):
        pt = canonicalize(assemble_from_limit_tree(g_fig2))
        model = realize(pt)
        assert verify(model, pt).ok
        a5s = [mc for mc in model.components if mc.n == 5]
        for s1 in a5s[0].sheets:
            for s2 in a5s[1].sheets:
                assert branch_contact_by_blowups(s1, s2) == 3

    @pytest.mark.parametrize("name", sorted(fx.FIXTURES))
    def test_every_fixture_verifies(self, name):
        g = fx.FIXTURES[name][1]
        pt = canonicalize(assemble_from_limit_tree(g))
        model = realize(pt)
        report = verify(model, pt)
        assert report.ok, report.mismatches
        assert model.y_degree() == pt.polar_multiplicity
        assert model.origin_order() == pt.polar_multiplicity

    def test_rejects_non_ultrametric(self):
        curves = tuple(
            AnCurve(n=5, site_kind="vertex", site=(v,), site_height=3)
            for v in ("u", "v", "w")
        )
        contact = (
            (0, 3, 1),
            (3, 0, 2),
            (1, 2, 0),
        )
        pt = PolarType(bunches=(), curves=curves, contact=contact, polar_multiplicity=6)
        with pytest.raises(ValueError, match="ultrametric"):
            realize(pt)

    def test_rejects_site_height_violation(self):
        curves = (
            AnCurve(n=3, site_kind="vertex", site=("u",), site_height=2),
            AnCurve(n=5, site_kind="vertex", site=("v",), site_height=3),
        )
        contact = ((0, 3), (3, 0))
        pt = PolarType(bunches=(), curves=curves, contact=contact, polar_multiplicity=4)
        with pytest.raises(ValueError, match="site-height"):
            realize(pt)


class TestVerify:
    def test_corrupted_model_reports_mismatch(self):
        pt = PolarType(
            bunches=(Bunch("a", 2),),
            curves=(),
            contact=((0, 1), (1, 0)),
            polar_multiplicity=2,
        )
        model = realize(pt)
        # corrupt: give both lines the same tangent
        from dataclasses import replace

        bad = replace(
            model,
            components=(
                model.components[0],
                replace(
                    model.components[1],
                    sheets=(PuiseuxBranch.of((1, 1), (2, 1)),),
                ),
            ),
        )
        report = verify(bad, pt)
        assert not report.ok
        assert any("expected 1" in m for m in report.mismatches)
