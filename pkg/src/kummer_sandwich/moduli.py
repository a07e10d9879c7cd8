"""Moduli-level formulas for genus-two curves, Kummer quartics and two-isogenous elliptic curves.

All functions are exact.  Values may be Fractions or :class:`QuadExt` scalars
whenever a square root leaves the rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .arith import QuadExt, sqrt_exact

Scalar = Any  # Fraction | QuadExt | Fp | UniPoly


class DegenerateModuli(ValueError):
    """Raised when a formula's denominator vanishes; the message names the factor."""


def _nonzero(value, label: str):
    if not value:
        raise DegenerateModuli(f"vanishing factor: {label}")
    return value


@dataclass(frozen=True)
class LevelTwoModuli:
    """The triple (Λ1, Λ2, Λ3) together with the branch l of sqrt(λ1 λ2 λ3), if known."""

    L1: Scalar
    L2: Scalar
    L3: Scalar
    l: Scalar | None = None

    def as_tuple(self) -> tuple:
        return (self.L1, self.L2, self.L3)

    def __iter__(self):
        return iter(self.as_tuple())


@dataclass(frozen=True)
class KummerQuarticParams:
    A: Fraction
    B: Fraction
    C: Fraction
    D: Fraction

    def identity_residual(self) -> Fraction:
        """D^2 - (A^2 + B^2 + C^2 + ABC - 4); zero on the Kummer locus."""
        A, B, C, D = self.A, self.B, self.C, self.D
        return D * D - (A * A + B * B + C * C + A * B * C - 4)


def _as_triple(lams: Sequence) -> tuple:
    if len(lams) != 3:
        raise ValueError(f"expected three Rosenhain roots, got {len(lams)}")
    return tuple(x if isinstance(x, QuadExt) else Fraction(x) for x in lams)


def _exact(v):
    return Fraction(v) if isinstance(v, (int, str)) else v


def check_rosenhain(lams: Sequence) -> tuple:
    """Validate pairwise distinct roots outside {0, 1}."""
    l1, l2, l3 = _as_triple(lams)
    for k, v in enumerate((l1, l2, l3), start=1):
        if v == 0 or v == 1:
            raise DegenerateModuli(f"lambda_{k} = {v} collides with a fixed branch point")
    if l1 == l2 or l1 == l3 or l2 == l3:
        raise DegenerateModuli("Rosenhain roots are not pairwise distinct")
    return l1, l2, l3


def level_two_from_rosenhain(lams: Sequence, sign: int = 1) -> LevelTwoModuli:
    """Λ1 = (λ1 + λ2λ3)/l etc. with l = sign * sqrt(λ1 λ2 λ3)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    l1, l2, l3 = check_rosenhain(lams)
    prod = l1 * l2 * l3
    _nonzero(prod, "lambda1*lambda2*lambda3")
    l = sqrt_exact(prod) * sign
    return LevelTwoModuli((l1 + l2 * l3) / l, (l2 + l1 * l3) / l, (l3 + l1 * l2) / l, l)


def richelot_transform(lam: LevelTwoModuli | Sequence) -> LevelTwoModuli:
    """Moduli of the (2,2)-isogenous curve for the fixed Richelot factorization."""
    L1, L2, L3 = (_exact(v) for v in tuple(lam)[:3])
    d23 = _nonzero(L2 - L3, "Lambda2 - Lambda3")
    plus = _nonzero(L1 + 2, "Lambda1 + 2")
    minus = _nonzero(L1 - 2, "Lambda1 - 2")
    n = 4 * (L1 - L2) * (L1 - L3)
    M1 = 2 * (2 * L1 - L2 - L3) / d23
    M2 = M1 - n / (plus * d23)
    M3 = M1 - n / (minus * d23)
    return LevelTwoModuli(M1, M2, M3)


def kummer_quartic_params(lams: Sequence) -> KummerQuarticParams:
    """(A, B, C, D) of the Kummer quartic normal form for the pairing (λ1,1), (λ2,λ3), (0,∞)."""
    l1, l2, l3 = _as_triple(lams)
    m1 = _nonzero(l1 - 1, "lambda1 - 1")
    d = _nonzero(l2 - l3, "lambda2 - lambda3")
    A = 2 * (l1 + 1) / m1
    B = 2 * (l1 * l2 + l1 * l3 - 2 * l2 * l3 - 2 * l1 + l2 + l3) / (d * m1)
    C = 2 * (l3 + l2) / (l3 - l2)
    D = 4 * (l1 - l2 * l3) / (d * m1)
    params = KummerQuarticParams(A, B, C, D)
    if params.identity_residual() != 0:
        raise ArithmeticError("Kummer parameter identity failed; this indicates a defect")
    return params


def nodal_quartic_condition(xi: Sequence) -> Fraction:
    """Cubic factor of the discriminant of the symmetric quartic family."""
    if len(xi) != 5:
        raise ValueError("expected five coefficients xi0..xi4")
    x0, x1, x2, x3, x4 = (Fraction(v) for v in xi)
    if not any((x0, x1, x2, x3, x4)):
        raise ValueError("all-zero coefficients do not define a quartic")
    return x0 * (16 * x0**2 - 4 * x1**2 - 4 * x2**2 - 4 * x3**2 + x4**2) + 4 * x1 * x2 * x3


def quartic_xi(params: KummerQuarticParams) -> tuple:
    """Affine moduli (1, -A, -B, -C, 2D) of the nodal quartic."""
    return (Fraction(1), -params.A, -params.B, -params.C, 2 * params.D)


# --------------------------------------------------------------------------
# Elliptic curves and two-isogenies
# --------------------------------------------------------------------------

def elliptic_two_isogeny_modulus(lam, branch: int = 1):
    """Legendre modulus ((1 - k)/(1 + k))^2 of the two-isogenous curve, k = branch*sqrt(λ)."""
    if branch not in (1, -1):
        raise ValueError("branch must be +1 or -1")
    lam = lam if isinstance(lam, QuadExt) else Fraction(lam)
    if lam == 0 or lam == 1:
        raise DegenerateModuli(f"lambda = {lam} is not an admissible Legendre modulus")
    k = sqrt_exact(lam) * branch
    if k == -1:
        raise DegenerateModuli("k = -1 makes 1 + k vanish")
    ratio = (1 - k) / (1 + k)
    return ratio * ratio


def jacobi_modulus_dual(k):
    """k' = (1 - k)/(1 + k); the relation is an involution."""
    k = _exact(k)
    return (1 - k) / _nonzero(1 + k, "1 + k")


def cross_ratio_orbit(lam) -> tuple:
    """The six Legendre moduli giving isomorphic curves."""
    lam = Fraction(lam)
    return (lam, 1 - lam, 1 / lam, 1 - 1 / lam, 1 / (1 - lam), 1 / (1 - 1 / lam))


def two_isogeny_locus_residual(l1, l2) -> tuple[Fraction, Fraction | None, bool]:
    """Return (residual, λ², on_locus).

    The residual vanishes iff the two Legendre curves are two-isogenous; λ² is the
    mirror-quartic parameter and is computed even off the locus.
    """
    l1, l2 = Fraction(l1), Fraction(l2)
    s, q = l1 + l2, l1 * l2
    residual = q * q - 2 * q * s + l1 * l1 + l2 * l2 - 12 * q - 2 * s + 1
    if l1 == 1 or l2 == 1:
        raise DegenerateModuli("lambda_i = 1 makes the mirror parameter undefined")
    lam_sq = -(l1 + 1) * (l2 + 1) / (2 * (l1 - 1) * (l2 - 1))
    return residual, lam_sq, residual == 0


def j_invariant(lam) -> Fraction:
    lam = Fraction(lam)
    if lam == 0 or lam == 1:
        raise DegenerateModuli(f"lambda = {lam} gives a singular curve")
    return 256 * (lam * lam - lam + 1) ** 3 / (lam * lam * (lam - 1) ** 2)


_X02 = {
    "c11": 1488,
    "c20": 2**4 * 3**4 * 5**3,
    "c11b": 3**4 * 5**3 * 4027,
    "c10": 2**8 * 3**7 * 5**6,  # classical value; 2^7 3^7 5^5 misses the parametrization
    "c00": 2**12 * 3**9 * 5**9,
}


def modular_curve_x0_2_residual(j1, j2) -> Fraction:
    """Classical modular polynomial of level two evaluated at (j1, j2)."""
    j1, j2 = Fraction(j1), Fraction(j2)
    return (
        -(j1 * j1) * (j2 * j2)
        + j1**3
        + j2**3
        + _X02["c11"] * j1 * j2 * (j1 + j2)
        - _X02["c20"] * (j1 * j1 + j2 * j2)
        + _X02["c11b"] * j1 * j2
        + _X02["c10"] * (j1 + j2)
        - _X02["c00"]
    )


def x0_2_parametrization(h) -> tuple[Fraction, Fraction]:
    """Rational point (j1, j2) = ((h+256)^3/h^2, (h+16)^3/h) on X0(2)."""
    h = Fraction(h)
    _nonzero(h, "h")
    return (h + 256) ** 3 / (h * h), (h + 16) ** 3 / h


def mirror_parameter_l(lam) -> Any:
    """l = 1 + 2λ sqrt(λ^2 - 1) - 2λ^2 for the rank-19 twisted Legendre pencil."""
    lam = Fraction(lam)
    return 1 + 2 * lam * sqrt_exact(lam * lam - 1) - 2 * lam * lam


# --------------------------------------------------------------------------
# Degeneration to Picard rank 18
# --------------------------------------------------------------------------

def degeneration_moduli(k1p, k2p, eps) -> LevelTwoModuli:
    """Primed moduli of the genus-two pencil with λ'1 = k'1^2, λ'2 = (k'2 ε')^2, λ'3 = ε'^2."""
    k1p, k2p, eps = _exact(k1p), _exact(k2p), _exact(eps)
    for v, name in ((k1p, "k'1"), (k2p, "k'2"), (eps, "epsilon'")):
        _nonzero(v, name)
    e2 = eps * eps
    L1 = k2p * e2 / k1p + k1p / (k2p * e2)
    L2 = k1p / k2p + k2p / k1p
    L3 = k1p * k2p + 1 / (k1p * k2p)
    return LevelTwoModuli(L1, L2, L3)
