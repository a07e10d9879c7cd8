"""Kodaira fiber types from vanishing orders of c4, c6 and the discriminant.

Valid in residue characteristic zero.  Factoring over Q is delegated to sympy.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources

import sympy

from .poly import UniPoly
from .surfaces import WeierstrassSurface, c4_c6_delta


@dataclass(frozen=True, order=True)
class KodairaType:
    symbol: str  # "I", "I*", "II", "III", "IV", "IV*", "III*", "II*", "smooth"
    n: int = 0

    def __str__(self) -> str:
        if self.symbol == "I":
            return f"I{self.n}"
        if self.symbol == "I*":
            return f"I{self.n}*"
        return self.symbol

    @property
    def euler_number(self) -> int:
        if self.symbol == "I":
            return self.n
        if self.symbol == "I*":
            return self.n + 6
        return _EULER_FIXED[self.symbol]

    @classmethod
    def parse(cls, text: str) -> "KodairaType":
        if text in _EULER_FIXED or text == "smooth":
            return cls(text)
        if text.startswith("I") and text.endswith("*") and text[1:-1].isdigit():
            return cls("I*", int(text[1:-1]))
        if text.startswith("I") and text[1:].isdigit():
            n = int(text[1:])
            return cls("smooth") if n == 0 else cls("I", n)
        raise ValueError(f"not a Kodaira symbol: {text!r}")


_EULER_FIXED = {"II": 2, "III": 3, "IV": 4, "IV*": 8, "III*": 9, "II*": 10, "smooth": 0}


class UnclassifiedFiber(ValueError):
    pass


def classify_orders(o4: int, o6: int, od: int) -> KodairaType:
    """Table lookup after reducing to a minimal model."""
    while o4 >= 4 and o6 >= 6 and od >= 12:
        o4, o6, od = o4 - 4, o6 - 6, od - 12
    if od == 0:
        return KodairaType("smooth")
    if o4 == 0:
        return KodairaType("I", od)
    if od == 2 and o6 == 1:
        return KodairaType("II")
    if od == 3 and o4 == 1:
        return KodairaType("III")
    if od == 4 and o4 >= 2 and o6 == 2:
        return KodairaType("IV")
    if od == 6 and o4 >= 2 and o6 >= 3:
        return KodairaType("I*", 0)
    if od > 6 and o4 == 2 and o6 == 3:
        return KodairaType("I*", od - 6)
    if od == 8 and o4 >= 3 and o6 == 4:
        return KodairaType("IV*")
    if od == 9 and o4 == 3:
        return KodairaType("III*")
    if od == 10 and o4 >= 4 and o6 == 5:
        return KodairaType("II*")
    raise UnclassifiedFiber(f"orders (c4, c6, disc) = ({o4}, {o6}, {od}) match no Kodaira type")


def _weight(c4: UniPoly, c6: UniPoly, delta: UniPoly) -> int:
    s = 2
    while c4.degree > 4 * s or c6.degree > 6 * s or delta.degree > 12 * s:
        s += 1
    return s


def _orders_at(c4, c6, delta, place) -> tuple[int, int, int]:
    if place == "inf":
        s = _weight(c4, c6, delta)
        return c4.order_at_infinity(4 * s), c6.order_at_infinity(6 * s), delta.order_at_infinity(12 * s)
    g = UniPoly([-Fraction(place), 1]) if not isinstance(place, UniPoly) else place
    return c4.valuation(g), c6.valuation(g), delta.valuation(g)


def _check_rational(surface: WeierstrassSurface):
    for poly in (surface.a2, surface.a4, surface.a6):
        for c in poly.coeffs:
            if not isinstance(c, (int, Fraction)):
                raise TypeError("Kodaira classification requires rational coefficients")


def kodaira_classify(surface: WeierstrassSurface, place) -> KodairaType:
    """Fiber type at a rational place u0 or at ``"inf"``."""
    _check_rational(surface)
    c4, c6, delta = c4_c6_delta(surface)
    return classify_orders(*_orders_at(c4, c6, delta, place))


@dataclass(frozen=True)
class FiberRecord:
    place: str  # "u0", "inf", or the irreducible factor for non-rational places
    degree: int  # number of conjugate fibers
    kodaira: KodairaType

    def to_json(self) -> dict:
        return {"place": self.place, "count": self.degree, "type": str(self.kodaira)}


def _to_sympy(poly: UniPoly, var):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(poly.coeffs)], var, domain="QQ")


def _from_sympy(poly) -> UniPoly:
    return UniPoly(Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs()))


def _place_label(g: UniPoly, var: str) -> tuple:
    if g.degree == 1:
        root = -g[0] / g[1]
        return (0, root), str(root)
    text = str(sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(g.coeffs)], sympy.Symbol(var)).as_expr())
    return (g.degree, text), text


def singular_fiber_summary(surface: WeierstrassSurface) -> list[FiberRecord]:
    """All singular fibers: rational places by value, others grouped by irreducible factor, infinity last."""
    _check_rational(surface)
    c4, c6, delta = c4_c6_delta(surface)
    var = sympy.Symbol(surface.base_variable or "u")
    _, factors = sympy.factor_list(_to_sympy(delta, var))
    records = []
    for fac, _mult in factors:
        g = _from_sympy(fac).monic()
        kt = classify_orders(*_orders_at(c4, c6, delta, g))
        key, label = _place_label(g, surface.base_variable)
        records.append((key, FiberRecord(label, g.degree, kt)))
    records.sort(key=lambda r: _sort_key(r[0]))
    out = [r for _, r in records if r.kodaira.symbol != "smooth"]
    kt_inf = classify_orders(*_orders_at(c4, c6, delta, "inf"))
    if kt_inf.symbol != "smooth":
        out.append(FiberRecord("inf", 1, kt_inf))
    return out


def _sort_key(key):
    deg, val = key
    if deg == 0:
        return (0, val, "")
    return (deg, Fraction(0), val)


def census(records: list[FiberRecord]) -> Counter:
    """Multiset of Kodaira symbols with conjugate fibers counted separately."""
    c: Counter = Counter()
    for r in records:
        c[str(r.kodaira)] += r.degree
    return c


def euler_sum(records: list[FiberRecord]) -> int:
    return sum(r.degree * r.kodaira.euler_number for r in records)


def census_diff(found: Counter, expected: dict) -> dict:
    """Symbols whose counts differ: {symbol: (found, expected)}."""
    keys = set(found) | set(expected)
    return {k: (found.get(k, 0), expected.get(k, 0)) for k in sorted(keys) if found.get(k, 0) != expected.get(k, 0)}




def load_censuses() -> dict:
    """Expected singular-fiber multisets by lemma id, from the packaged data file."""
    text = resources.files("kummer_sandwich").joinpath("data/censuses.json").read_text()
    return json.loads(text)


def census_for(catalog_id: str) -> tuple[str, dict] | None:
    """(lemma id, expected multiset) for a catalog id, if one is recorded."""
    for lemma, entry in load_censuses().items():
        if entry["catalog_id"] == catalog_id:
            return lemma, entry["expected"]
    return None
