"""Explicit plane-curve models realizing a polar type, with verification.

Components are realized as exact fractional-exponent sheets around shared
center series: the contact hierarchy is walked top-down and every cluster
split at level k hands its subclusters pairwise distinct integer
coefficients at x^k, so each required contact is achieved exactly and never
accidentally exceeded. An A_{2q-1} becomes (y-P)^2 - d^2 x^{2q} (two smooth
sheets), an A_{2q} becomes (y-P)^2 - x^{2q+1} (one branch, two conjugate
half-integer sheets); coefficients stay rational throughout.

Contact between two branches is defined as the number of point blow-ups
needed to separate them, and the simulator below is the single source of
truth for it: branches are parametrized exactly (a half-integer sheet via
x = t^2) and blown up until their center points differ.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .polartype import PolarType

INFINITE_SLOPE = object()


class TruncationError(Exception):
    """Separation not witnessed within the allowed number of blow-ups."""


@dataclass(frozen=True)
class PuiseuxBranch:
    """A sheet y = sum coefficient * x^exponent with exact rational data.

    Exponents are strictly increasing positive rationals with denominator 1
    or 2; at most one half-integer exponent may occur, and only as the last
    term.
    """

    terms: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        exps = [e for e, _ in self.terms]
        if any(e <= 0 for e in exps):
            raise ValueError("exponents must be positive")
        if any(e1 >= e2 for e1, e2 in zip(exps, exps[1:])):
            raise ValueError("exponents must be strictly increasing")
        if any(e.denominator not in (1, 2) for e in exps):
            raise ValueError("exponent denominators must be 1 or 2")
        half = [e for e in exps if e.denominator == 2]
        if len(half) > 1 or (half and exps[-1] != half[0]):
            raise ValueError("at most one half-integer exponent, occurring last")

    @staticmethod
    def of(*terms) -> "PuiseuxBranch":
        return PuiseuxBranch(
            tuple((Fraction(e), Fraction(c)) for e, c in terms if Fraction(c) != 0)
        )

    def ramification(self) -> int:
        """1 for integer exponents, 2 when a half-integer term is present."""
        return 2 if any(e.denominator == 2 for e, _ in self.terms) else 1

    def t_series(self) -> tuple[int, dict[int, Fraction]]:
        """Exact parametrization x = t^r, y = series in t with integer exponents."""
        r = self.ramification()
        return r, {int(e * r): c for e, c in self.terms}


def branch_contact_by_blowups(
    b1: PuiseuxBranch, b2: PuiseuxBranch, max_steps: int | None = None
) -> int:
    """Number of point blow-ups separating two distinct branches.

    Both branches start at the origin; at every step the center of each
    strict transform on the exceptional line is its x-slope (infinite when
    the transform went tangent to the exceptional divisor). The step at
    which the centers first differ is the contact.
    """
    if b1.terms == b2.terms:
        raise ValueError("branches must be distinct series")
    if max_steps is None:
        top = max(
            (e for b in (b1, b2) for e, _ in b.terms),
            default=Fraction(0),
        )
        max_steps = int(top) + 3
    states = []
    for b in (b1, b2):
        r, series = b.t_series()
        states.append((r, dict(series)))
    for step in range(1, max_steps + 1):
        slopes = []
        for r, series in states:
            if any(e < r for e in series):
                slopes.append(INFINITE_SLOPE)
            else:
                slopes.append(series.get(r, Fraction(0)))
        infinite = [s is INFINITE_SLOPE for s in slopes]
        if all(infinite):
            raise TruncationError(
                "both transforms became tangent to the exceptional divisor; "
                "separation not witnessed"
            )
        if any(infinite) or slopes[0] != slopes[1]:
            return step
        # shared center: recenter y/x - slope and continue
        states = [
            (r, {e - r: c for e, c in series.items() if e != r})
            for r, series in states
        ]
    raise TruncationError(f"branches not separated within {max_steps} blow-ups")


# --- model construction ---------------------------------------------------------

Poly = dict[tuple[int, int], Fraction]


def _poly_mul(a: Poly, b: Poly) -> Poly:
    out: Poly = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            key = (i1 + i2, j1 + j2)
            val = out.get(key, Fraction(0)) + c1 * c2
            if val == 0:
                out.pop(key, None)
            else:
                out[key] = val
    return out


def _poly_from_center(center: dict[int, Fraction]) -> Poly:
    """y - P(x) as a polynomial in x, y."""
    poly: Poly = {(0, 1): Fraction(1)}
    for e, c in center.items():
        if c != 0:
            poly[(e, 0)] = poly.get((e, 0), Fraction(0)) - c
    return poly


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _fmt_linear(center: dict[int, Fraction], tail: tuple[Fraction, Fraction] | None) -> str:
    """Human-readable 'y - P(x) -/+ tail' factor (integer exponents only)."""
    parts = ["y"]
    items = sorted(center.items())
    if tail is not None:
        items.append((tail[0], tail[1]))
    for e, c in items:
        if c == 0:
            continue
        sign = "-" if c > 0 else "+"
        mag = abs(c)
        coeff = "" if mag == 1 else f"{_fmt_coeff(mag)}*"
        power = "x" if e == 1 else f"x^{e}"
        parts.append(f" {sign} {coeff}{power}")
    return "(" + "".join(parts) + ")"


def _fmt_even(center: dict[int, Fraction], q: int) -> str:
    inner = _fmt_linear(center, None)
    return f"({inner}^2 - x^{2 * q + 1})"


@dataclass(frozen=True)
class ModelComponent:
    index: int
    kind: str  # "line" or "an"
    n: int | None
    sheets: tuple[PuiseuxBranch, ...]
    poly: Poly
    factored: str


@dataclass(frozen=True)
class PlaneCurveModel:
    components: tuple[ModelComponent, ...]
    product: Poly

    def factored_string(self) -> str:
        return "*".join(c.factored for c in self.components) if self.components else "1"

    def product_monomials(self) -> list[list]:
        return [
            [i, j, _fmt_coeff(c)]
            for (i, j), c in sorted(self.product.items())
        ]

    def y_degree(self) -> int:
        return max((j for (_, j) in self.product), default=0)

    def origin_order(self) -> int:
        return min((i + j for (i, j) in self.product), default=0)


def _component_profiles(pt: PolarType) -> list[dict]:
    """Flatten the type into per-component records (lines first, then curves)."""
    profiles = []
    idx = 0
    for b in pt.bunches:
        for _ in range(b.lines):
            profiles.append({"index": idx, "kind": "line", "q": 1, "n": None})
            idx += 1
    for c in pt.curves:
        profiles.append(
            {
                "index": idx,
                "kind": "odd" if c.n % 2 == 1 else "even",
                "q": c.site_height,
                "n": c.n,
            }
        )
        idx += 1
    return profiles


def _validate_contact_input(pt: PolarType, profiles: list[dict]) -> None:
    n = len(profiles)
    for i, j in itertools.combinations(range(n), 2):
        c = pt.contact[i][j]
        if c != pt.contact[j][i]:
            raise ValueError("contact matrix is not symmetric")
        if not 1 <= c <= min(profiles[i]["q"], profiles[j]["q"]):
            raise ValueError(
                f"contact({i},{j}) = {c} violates the site-height bound"
            )
    for i, j, k in itertools.combinations(range(n), 3):
        a, b, c = pt.contact[i][j], pt.contact[j][k], pt.contact[i][k]
        if c < min(a, b) or a < min(b, c) or b < min(a, c):
            raise ValueError("contact matrix is not ultrametric-compatible")


def realize(pt: PolarType) -> PlaneCurveModel:
    """Build an explicit exact model of the polar type.

    Raises ValueError if the contact matrix is not realizable (never for
    assembled types).
    """
    profiles = _component_profiles(pt)
    _validate_contact_input(pt, profiles)
    centers: dict[int, dict[int, Fraction]] = {}
    tails: dict[int, tuple[Fraction, Fraction] | None] = {}

    def finalize(comp: int, prefix: dict[int, Fraction]) -> None:
        p = profiles[comp]
        centers[comp] = dict(prefix)
        if p["kind"] == "line":
            tails[comp] = None
        elif p["kind"] == "odd":
            tails[comp] = (Fraction(p["q"]), Fraction(1))
        else:
            tails[comp] = (Fraction(p["q"]) + Fraction(1, 2), Fraction(1))

    def assign(members: list[int], level: int, prefix: dict[int, Fraction]) -> None:
        if len(members) == 1:
            finalize(members[0], prefix)
            return
        # partition members by contact >= level + 1 (transitive by ultrametricity)
        subs: list[list[int]] = []
        for m in members:
            for sub in subs:
                if pt.contact[sub[0]][m] >= level + 1:
                    sub.append(m)
                    break
            else:
                subs.append([m])
        if len(subs) == 1:
            assign(members, level + 1, prefix)
            return
        used: set[Fraction] = set()

        def next_alt() -> Fraction:
            k = 1
            while True:
                for cand in (Fraction(k), Fraction(-k)):
                    if cand not in used:
                        return cand
                k += 1

        def next_symmetric() -> Fraction:
            k = 1
            while True:
                if Fraction(k) not in used and Fraction(-k) not in used:
                    return Fraction(k)
                k += 1

        for sub in subs:
            comp = sub[0]
            p = profiles[comp]
            if len(sub) == 1 and p["kind"] == "odd" and p["q"] == level:
                # terminal split: the two sheets realize the split themselves
                d = next_symmetric()
                used.update({d, -d})
                centers[comp] = dict(prefix)
                tails[comp] = (Fraction(level), d)
                continue
            c = next_alt()
            used.add(c)
            new_prefix = dict(prefix)
            new_prefix[level] = c
            if len(sub) == 1:
                finalize(comp, new_prefix)
            else:
                assign(sub, level + 1, new_prefix)

    all_members = [p["index"] for p in profiles]
    if all_members:
        assign(all_members, 1, {})

    components = []
    for p in profiles:
        comp = p["index"]
        center = {e: c for e, c in sorted(centers[comp].items()) if c != 0}
        tail = tails[comp]
        if p["kind"] == "line":
            sheets = (PuiseuxBranch.of(*center.items()),)
            poly = _poly_from_center(center)
            factored = _fmt_linear(center, None)
        elif p["kind"] == "odd":
            q = p["q"]
            e_tail, d = tail
            plus = PuiseuxBranch.of(*center.items(), (e_tail, d))
            minus = PuiseuxBranch.of(*center.items(), (e_tail, -d))
            base = _poly_from_center(center)
            poly = _poly_mul(base, base)
            key = (2 * q, 0)
            poly[key] = poly.get(key, Fraction(0)) - d * d
            if poly[key] == 0:
                del poly[key]
            sheets = (plus, minus)
            factored = _fmt_linear(center, (e_tail, d)) + "*" + _fmt_linear(
                center, (e_tail, -d)
            )
        else:
            q = p["q"]
            e_tail, _ = tail
            plus = PuiseuxBranch.of(*center.items(), (e_tail, Fraction(1)))
            minus = PuiseuxBranch.of(*center.items(), (e_tail, Fraction(-1)))
            base = _poly_from_center(center)
            poly = _poly_mul(base, base)
            key = (2 * q + 1, 0)
            poly[key] = poly.get(key, Fraction(0)) - 1
            if poly[key] == 0:
                del poly[key]
            sheets = (plus, minus)
            factored = _fmt_even(center, q)
        components.append(
            ModelComponent(
                index=comp,
                kind="line" if p["kind"] == "line" else "an",
                n=p["n"],
                sheets=sheets,
                poly=poly,
                factored=factored,
            )
        )
    product: Poly = {(0, 0): Fraction(1)}
    for c in components:
        product = _poly_mul(product, c.poly)
    return PlaneCurveModel(components=tuple(components), product=product)


# --- verification ----------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    ok: bool
    checked_pairs: int
    mismatches: tuple[str, ...]


def verify(model: PlaneCurveModel, pt: PolarType) -> VerificationReport:
    """Check every contact claim of the type against the blow-up simulator.

    (a) the two sheets of an A_{2q-1} have contact q; (b) every
    cross-component sheet pair has the component contact; (c) line pairs are
    covered by (b) since lines are components. Mismatches are reported, not
    raised.
    """
    max_height = max([c.site_height for c in pt.curves], default=1)
    budget = 2 * max_height + 3
    mismatches: list[str] = []
    checked = 0
    for mc in model.components:
        if mc.kind == "an" and mc.n is not None and mc.n % 2 == 1:
            q = (mc.n + 1) // 2
            got = branch_contact_by_blowups(mc.sheets[0], mc.sheets[1], budget)
            checked += 1
            if got != q:
                mismatches.append(
                    f"component {mc.index}: sheet contact {got}, expected {q}"
                )
    for a, b in itertools.combinations(model.components, 2):
        want = pt.contact[a.index][b.index]
        for s1, s2 in itertools.product(a.sheets, b.sheets):
            got = branch_contact_by_blowups(s1, s2, budget)
            checked += 1
            if got != want:
                mismatches.append(
                    f"components {a.index},{b.index}: sheet contact {got}, "
                    f"expected {want}"
                )
    return VerificationReport(ok=not mismatches, checked_pairs=checked, mismatches=tuple(mismatches))
