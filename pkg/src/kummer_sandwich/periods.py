"""Gauss hypergeometric series and the two period identities of the mirror-quartic family."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

SERIES_RADIUS = 0.95
MAX_TERMS = 100_000


class ConvergenceError(ArithmeticError):
    pass


@dataclass(frozen=True)
class HypParams:
    a: Fraction
    b: Fraction
    c: Fraction
    z: complex
    tol: float = 1e-15

    def __post_init__(self):
        c = Fraction(self.c)
        if c.denominator == 1 and c <= 0:
            raise ValueError(f"c = {c} is a non-positive integer")
        if abs(self.z) > SERIES_RADIUS:
            raise ValueError(f"|z| = {abs(self.z):.4g} exceeds the series radius {SERIES_RADIUS}")
        if self.tol < 1e-15:
            raise ValueError("tol below 1e-15 is not reachable in double precision")


def hyp2f1(a, b, c, z, tol: float = 1e-15, max_terms: int = MAX_TERMS) -> complex:
    """Gauss series summed until a term drops below tol times the partial sum."""
    params = HypParams(Fraction(a), Fraction(b), Fraction(c), complex(z), tol)
    fa, fb, fc = float(params.a), float(params.b), float(params.c)
    z = params.z
    term, total = 1 + 0j, 1 + 0j
    for n in range(max_terms):
        term *= (fa + n) * (fb + n) / ((fc + n) * (n + 1)) * z
        total += term
        if abs(term) < tol * abs(total):
            return total
    raise ConvergenceError(f"2F1({a}, {b}; {c}; {z}) did not converge in {max_terms} terms")


@dataclass(frozen=True)
class PeriodReport:
    name: str
    lam: float
    lhs: float
    rhs: float
    tol: float

    @property
    def rel_diff(self) -> float:
        return abs(self.lhs - self.rhs) / max(1.0, abs(self.lhs))

    @property
    def ok(self) -> bool:
        return self.rel_diff <= self.tol

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "lambda": self.lam,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "rel_diff": self.rel_diff,
            "tol": self.tol,
            "ok": self.ok,
        }


def _lam(lam) -> float:
    value = float(Fraction(lam)) if isinstance(lam, (str, Fraction, int)) else float(lam)
    if value <= 1:
        raise ValueError("lambda must exceed 1")
    return value


def half_argument(lam) -> float:
    """A = (1 - sqrt(1 - 1/lam^4)) / 2."""
    mu = 1 / _lam(lam) ** 4
    return (1 - math.sqrt(1 - mu)) / 2


def quadratic_transformation_check(p, q, lam, tol: float = 1e-10) -> PeriodReport:
    """2F1(p, q; p+q+1/2; 1/lam^4) against 2F1(2p, 2q; p+q+1/2; A)."""
    p, q = Fraction(p), Fraction(q)
    c = p + q + Fraction(1, 2)
    lv = _lam(lam)
    lhs = hyp2f1(p, q, c, 1 / lv**4).real
    rhs = hyp2f1(2 * p, 2 * q, c, half_argument(lv)).real
    return PeriodReport(f"quadratic({p},{q})", lv, lhs, rhs, tol)


def holomorphic_period_check(lam, tol: float = 1e-10) -> PeriodReport:
    """2F1(1/4, 3/4; 1; A)^2 against 2F1(1/8, 3/8; 1; 1/lam^4)^2; common (2 pi i)^2 factors dropped."""
    lv = _lam(lam)
    lhs = hyp2f1(Fraction(1, 4), Fraction(3, 4), 1, half_argument(lv)).real ** 2
    rhs = hyp2f1(Fraction(1, 8), Fraction(3, 8), 1, 1 / lv**4).real ** 2
    return PeriodReport("holomorphic_period", lv, lhs, rhs, tol)
