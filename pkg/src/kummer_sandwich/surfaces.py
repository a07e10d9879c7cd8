"""Catalog of the surface models: Weierstrass fibrations, twisted Legendre double covers and quartics.

Every builder is generic over the scalar type of its parameters, so the same
code produces models over Q, over a quadratic extension, over F_p, or with a
formal parameter (a UniPoly scalar) as used by the degeneration check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Sequence

from .arith import Fp, PrimeField, QuadExt, format_rational, reduce_mod_p, sqrt_mod_p
from .moduli import mirror_parameter_l
from .poly import BiPoly, UniPoly


# --------------------------------------------------------------------------
# Model types
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class WeierstrassSurface:
    """y^2 = x^3 + a2(u) x^2 + a4(u) x + a6(u)."""

    a2: UniPoly
    a4: UniPoly
    a6: UniPoly
    catalog_id: str = "custom"
    base_variable: str = "u"
    rescale: str = "none"

    def rhs(self, u, x):
        return ((x + self.a2(u)) * x + self.a4(u)) * x + self.a6(u)

    def contains(self, u, x, y) -> bool:
        return y * y == self.rhs(u, x)

    def map_coeffs(self, fn: Callable) -> "WeierstrassSurface":
        return WeierstrassSurface(
            self.a2.map_coeffs(fn), self.a4.map_coeffs(fn), self.a6.map_coeffs(fn),
            self.catalog_id, self.base_variable, self.rescale,
        )

    def reduce(self, ctx: PrimeField) -> "WeierstrassSurface":
        """Coefficients as F_p elements; raises BadReduction if p divides a denominator."""
        p = ctx.p
        return self.map_coeffs(lambda c: Fp(reduce_mod_p(c, p), p))

    def rescaled(self, s) -> "WeierstrassSurface":
        """Model obtained by x -> s^2 x, y -> s^3 y: coefficients a_k * s^k."""
        s2 = s * s
        return WeierstrassSurface(
            self.a2.scale(s2), self.a4.scale(s2 * s2), self.a6.scale(s2 * s2 * s2),
            self.catalog_id, self.base_variable, self.rescale,
        )

    def same_coefficients(self, other: "WeierstrassSurface") -> bool:
        return (self.a2, self.a4, self.a6) == (other.a2, other.a4, other.a6)

    def to_json(self) -> dict:
        return {
            "catalog_id": self.catalog_id,
            "base_variable": self.base_variable,
            "a2": [format_rational(c) for c in self.a2.coeffs],
            "a4": [format_rational(c) for c in self.a4.coeffs],
            "a6": [format_rational(c) for c in self.a6.coeffs],
        }


@dataclass(frozen=True)
class AffineDoubleCover:
    """y^2 = f(x, w) with f a bivariate polynomial."""

    f: BiPoly
    catalog_id: str = "custom"
    variables: tuple[str, str] = ("x", "w")

    def contains(self, x, w, y) -> bool:
        return y * y == self.f(x, w)

    def reduce(self, ctx: PrimeField) -> "AffineDoubleCover":
        p = ctx.p
        return AffineDoubleCover(self.f.map_coeffs(lambda c: reduce_mod_p(c, p)), self.catalog_id, self.variables)


@dataclass(frozen=True)
class ImplicitSurface:
    """A surface given by the vanishing of an explicit polynomial function."""

    catalog_id: str
    variables: tuple[str, ...]
    equation: Callable[..., Any] = field(compare=False)
    params: tuple = ()

    def residual(self, *point):
        return self.equation(*point)

    def contains(self, *point) -> bool:
        return not self.equation(*point)


@dataclass(frozen=True)
class EllipticCurveModel:
    """y^2 = x^3 + a2 x^2 + a4 x + a6 with constant coefficients."""

    a2: Any
    a4: Any
    a6: Any
    catalog_id: str

    def contains(self, x, y) -> bool:
        return y * y == ((x + self.a2) * x + self.a4) * x + self.a6


# --------------------------------------------------------------------------
# Builders
# --------------------------------------------------------------------------

_u = UniPoly.gen()


def _poly(*coeffs) -> UniPoly:
    return UniPoly(coeffs)


def _rank18_constants(l1, l2):
    return (l1 - 1) * (l2 - 1), 2 * (l1 + 1) * (l2 + 1)


def _j1(l1, l2) -> WeierstrassSurface:
    c1, c2 = _rank18_constants(l1, l2)
    # t^2 (c1 (t^2 + t^-2) - c2) = c1 t^4 - c2 t^2 + c1
    a2 = _poly(c1, 0, -c2, 0, c1)
    a4 = UniPoly.monomial(4, 16 * l1 * l2)
    return WeierstrassSurface(a2, a4, UniPoly(), "J1", "t", "t^2 prefactor clears t^-2")


def _j1_unscaled(l1, l2) -> WeierstrassSurface:
    a2 = _poly((l2 - 1) ** 2, 0, -2 * (l1 + 1) * (l2 + 1), 0, (l1 - 1) ** 2)
    a4 = UniPoly.monomial(4, 16 * l1 * l2)
    return WeierstrassSurface(a2, a4, UniPoly(), "J1_UNSCALED", "t")


def _y_rank18(l1, l2) -> WeierstrassSurface:
    c1, c2 = _rank18_constants(l1, l2)
    a2 = _poly(0, c1, -c2, c1)
    a4 = UniPoly.monomial(4, 16 * l1 * l2)
    return WeierstrassSurface(a2, a4, UniPoly(), "Y_RANK18", "u", "u^2 prefactor clears u^-1")


def _j7(l1, l2) -> WeierstrassSurface:
    c1, c2 = _rank18_constants(l1, l2)
    q = _poly(-4, 0, 1)
    a2 = q * _poly(-c2, c1)
    a4 = (q * q).scale(16 * l1 * l2)
    return WeierstrassSurface(a2, a4, UniPoly(), "J7", "v")


def _s_prime_rank18(l1, l2) -> WeierstrassSurface:
    c1, c2 = _rank18_constants(l1, l2)
    inner = _poly(c1, -c2, c1)  # u (c1 (u + 1/u) - c2)
    a2 = (inner * _u).scale(Fraction(-1, 2))
    a4 = (inner * inner - UniPoly.monomial(2, 64 * l1 * l2)) * UniPoly.monomial(2, Fraction(1, 16))
    return WeierstrassSurface(a2, a4, UniPoly(), "S_PRIME_RANK18", "u", "u^2 and u^4 prefactors clear u^-1")


def _y_prime_rank18(l1, l2, inner_factor) -> WeierstrassSurface:
    c1, c2 = _rank18_constants(l1, l2)
    q = _poly(-4, 0, 1)
    a2 = (q * _poly(-c2, c1)).scale(Fraction(-1, 2))
    inner = _poly(-inner_factor * (l1 + 1) * (l2 + 1), c1)
    a4 = (q * q * (inner * inner - 64 * l1 * l2)).scale(Fraction(1, 16))
    return WeierstrassSurface(a2, a4, UniPoly(), "Y_PRIME_RANK18", "v")


def _j4(l1, l2) -> WeierstrassSurface:
    # y12^2 = d x2 (x2 - 1)(x2 - l2) with d = x1 (x1 - 1)(x1 - l1); x = d x2, y = d^2 y12
    d = UniPoly.from_roots([0, 1, l1])
    a2 = d.scale(-(1 + l2))
    a4 = (d * d).scale(l2)
    return WeierstrassSurface(a2, a4, UniPoly(), "J4", "x1", "x = d x2, y = d^2 y12 with d = x1(x1-1)(x1-l1)")


def _mirror_g2g3(lam) -> tuple[UniPoly, UniPoly]:
    L2 = lam * lam
    L4 = L2 * L2
    g2 = _poly(0, 0, 1, 8 * L2, (4 * L2 - 1) * (4 * L2 + 1), 8 * L2, 1).scale(Fraction(4, 3) / L4)
    g3 = (
        UniPoly.monomial(3, 1)
        * _poly(1, 4 * L2, 1)
        * _poly(2, 16 * L2, 32 * L4 - 5, 16 * L2, 2)
    ).scale(Fraction(4, 27) / (L4 * L2))
    return g2, g3


def mirror_g2_g3(lam) -> tuple[UniPoly, UniPoly]:
    """(g2, g3) of the mirror-quartic fibration in the form Y^2 = 4X^3 - g2 X - g3."""
    return _mirror_g2g3(lam)


def _mirror(lam) -> WeierstrassSurface:
    # Y^2 = 4X^3 - g2 X - g3 with X = x, Y = 2y gives y^2 = x^3 - (g2/4) x - g3/4
    g2, g3 = _mirror_g2g3(lam)
    return WeierstrassSurface(
        UniPoly(), g2.scale(Fraction(-1, 4)), g3.scale(Fraction(-1, 4)),
        "MIRROR_G2G3", "u", "X = x, Y = 2y from the 4X^3 form",
    )


def _rank17_constants(L1, L2, L3):
    return 2 * L1 - L2 - L3, 2 * L2 * L3 - L1 * L2 - L1 * L3


def _s_prime_17(L1, L2, L3) -> WeierstrassSurface:
    r3 = _poly(1, -L3, 1) * _u.scale(L1 - L2)
    r2 = _poly(1, -L2, 1) * _u.scale(L1 - L3)
    return WeierstrassSurface(-(r3 + r2), r3 * r2, UniPoly(), "S_PRIME_17", "u")


def _y_17(L1, L2, L3) -> WeierstrassSurface:
    e, f = _rank17_constants(L1, L2, L3)
    a2 = _poly(0, 2 * e, 2 * f, 2 * e)
    r = _poly(1, -L1, 1)
    a4 = (r * r * UniPoly.monomial(2, 1)).scale((L2 - L3) * (L2 - L3))
    return WeierstrassSurface(a2, a4, UniPoly(), "Y_17", "u", "u^2 and u^4 prefactors clear u^-1")


def _s_17_a(L1, L2, L3) -> WeierstrassSurface:
    e, f = _rank17_constants(L1, L2, L3)
    a2 = _poly(2 * e, 0, 2 * f, 0, 2 * e)
    r = _poly(1, 0, -L1, 0, 1)
    a4 = (r * r).scale((L2 - L3) * (L2 - L3))
    return WeierstrassSurface(a2, a4, UniPoly(), "S_17_A", "t", "t^2 and t^4 prefactors clear t^-2")


def _s_17_b(L1, L2, L3) -> WeierstrassSurface:
    e, f = _rank17_constants(L1, L2, L3)
    q = _poly(-4, 0, 1)
    a2 = (q * _poly(f, e)).scale(2)
    r = _poly(-L1, 1)
    a4 = (q * q * r * r).scale((L2 - L3) * (L2 - L3))
    return WeierstrassSurface(a2, a4, UniPoly(), "S_17_B", "v")


def _y_prime_17(L1, L2, L3) -> WeierstrassSurface:
    e, f = _rank17_constants(L1, L2, L3)
    q = _poly(-4, 0, 1)
    a2 = -(q * _poly(f, e))
    a4 = (q * q * _poly(-L2, 1) * _poly(-L3, 1)).scale((L1 - L2) * (L1 - L3))
    return WeierstrassSurface(a2, a4, UniPoly(), "Y_PRIME_17", "v")


def _legendre17(L1, L2, L3) -> AffineDoubleCover:
    x, w = BiPoly.x(), BiPoly.w()
    f = -((x * x - 4) * (x - w) * (w - L1) * (w - L2) * (w - L3))
    return AffineDoubleCover(f, "LEGENDRE17", ("x", "w"))


def twist_factor_value(L1, L2, L3):
    """ν(Λ) = 16(Λ1-Λ3)(Λ1-Λ2) / ((Λ2-Λ3)^2 (Λ1^2-4)); see counting.twist_factor for checks."""
    return 16 * (L1 - L3) * (L1 - L2) / ((L2 - L3) ** 2 * (L1 * L1 - 4))


def _legendre17_tilde(L1, L2, L3) -> AffineDoubleCover:
    nu = twist_factor_value(L1, L2, L3)
    x, w = BiPoly.x(), BiPoly.w()
    f = -(nu * ((x * x - 4) * (x - w) * (w - L1) * (w - L2) * (w - L3)))
    return AffineDoubleCover(f, "LEGENDRE17_TILDE", ("x~", "v~"))


def _legendre18(l1, l2, sign: int = 1) -> AffineDoubleCover:
    from .arith import sqrt_exact

    l = sqrt_exact(l1 * l2) * sign
    r1 = (l + 1) ** 2 / (4 * l)
    r2 = (l + l1) ** 2 / (4 * l * l1)
    x, w = BiPoly.x(), BiPoly.w()
    f = (16 * l) * x * (x - 1) * (x - w) * (w - r1) * (w - r2)
    return AffineDoubleCover(f, "LEGENDRE18", ("x", "w"))


def _legendre19(lam) -> AffineDoubleCover:
    lam = Fraction(lam)
    l = mirror_parameter_l(lam)
    L2 = lam * lam
    x, w = BiPoly.x(), BiPoly.w()
    f = (16 * l) * x * (x - 1) * (x - w) * (w - L2) * (w - 1 - L2)
    return AffineDoubleCover(f, "LEGENDRE19", ("x", "w"))


def _shioda_sextic(l1, l2, l3) -> AffineDoubleCover:
    U, X = BiPoly.x(), BiPoly.w()
    f = U * (U - X + 1)
    for li in (l1, l2, l3):
        f = f * (li * li * U - li * X + 1)
    return AffineDoubleCover(f, "SHIODA_SEXTIC", ("U", "X"))


def _quartic(A, B, C, D) -> ImplicitSurface:
    def eq(X0, X1, X2, X3):
        s = lambda a, b: a * a * b * b  # noqa: E731
        return (
            X0**4 + X1**4 + X2**4 + X3**4 + 2 * D * X0 * X1 * X2 * X3
            - A * (s(X0, X1) + s(X2, X3))
            - B * (s(X0, X2) + s(X1, X3))
            - C * (s(X0, X3) + s(X1, X2))
        )

    return ImplicitSurface("QUARTIC", ("X0", "X1", "X2", "X3"), eq, (A, B, C, D))


def _mirror_cubic(lam) -> ImplicitSurface:
    # n = 3: x1 x2 x3 (x1 + x2 + x3 + 1) + mu / 4^4 with mu = 1/lam^4
    def eq(x1, x2, x3):
        mu = 1 / (lam * lam * lam * lam)
        return x1 * x2 * x3 * (x1 + x2 + x3 + 1) + mu / 256

    return ImplicitSurface("MIRROR_CUBIC", ("x1", "x2", "x3"), eq, (lam,))


def _elliptic_e(lam) -> EllipticCurveModel:
    return EllipticCurveModel(-(1 + lam), lam, 0 * lam, "ELLIPTIC_E")


def _elliptic_e_prime(lam) -> EllipticCurveModel:
    return EllipticCurveModel((1 + lam) / 2, (1 - lam) ** 2 / 4, 0 * lam, "ELLIPTIC_E_PRIME")


@dataclass(frozen=True)
class CatalogEntry:
    builder: Callable
    params: tuple[str, ...]
    kind: str
    description: str


CATALOG: dict[str, CatalogEntry] = {
    "MIRROR_G2G3": CatalogEntry(_mirror, ("lam",), "weierstrass", "mirror-quartic fibration, monic form"),
    "J4": CatalogEntry(_j4, ("l1", "l2"), "weierstrass", "double Kummer pencil"),
    "J1": CatalogEntry(_j1, ("l1", "l2"), "weierstrass", "symmetric fibration on Kum(E1 x E2)"),
    "J1_UNSCALED": CatalogEntry(_j1_unscaled, ("l1", "l2"), "weierstrass", "J1 before the symmetric rescale"),
    "Y_RANK18": CatalogEntry(_y_rank18, ("l1", "l2"), "weierstrass", "quotient by iota"),
    "J7": CatalogEntry(_j7, ("l1", "l2"), "weierstrass", "quotient of Y by j''"),
    "S_PRIME_RANK18": CatalogEntry(_s_prime_rank18, ("l1", "l2"), "weierstrass", "Kum(E1' x E2')"),
    "Y_PRIME_RANK18": CatalogEntry(
        lambda l1, l2: _y_prime_rank18(l1, l2, 2), ("l1", "l2"), "weierstrass",
        "quotient of S' by j', reading with inner factor 2(l1+1)(l2+1)",
    ),
    "Y_PRIME_RANK18_PRINTED": CatalogEntry(
        lambda l1, l2: _y_prime_rank18(l1, l2, 1), ("l1", "l2"), "weierstrass",
        "same model with the printed inner factor (l1+1)(l2+1)",
    ),
    "LEGENDRE18": CatalogEntry(_legendre18, ("l1", "l2"), "cover", "rank-18 twisted Legendre pencil"),
    "LEGENDRE19": CatalogEntry(_legendre19, ("lam",), "cover", "rank-19 twisted Legendre pencil"),
    "SHIODA_SEXTIC": CatalogEntry(_shioda_sextic, ("l1", "l2", "l3"), "cover", "symmetric square quotient"),
    "S_PRIME_17": CatalogEntry(_s_prime_17, ("L1", "L2", "L3"), "weierstrass", "fibration on Kum(Jac C')"),
    "Y_17": CatalogEntry(_y_17, ("L1", "L2", "L3"), "weierstrass", "VGS quotient of S'"),
    "S_17_A": CatalogEntry(_s_17_a, ("L1", "L2", "L3"), "weierstrass", "fibration (1) on Kum(Jac C)"),
    "S_17_B": CatalogEntry(_s_17_b, ("L1", "L2", "L3"), "weierstrass", "fibration (2) on Kum(Jac C)"),
    "Y_PRIME_17": CatalogEntry(_y_prime_17, ("L1", "L2", "L3"), "weierstrass", "quotient of S' by j'"),
    "LEGENDRE17": CatalogEntry(_legendre17, ("L1", "L2", "L3"), "cover", "twisted Legendre pencil in primed moduli"),
    "LEGENDRE17_TILDE": CatalogEntry(
        _legendre17_tilde, ("L1", "L2", "L3"), "cover", "twisted Legendre pencil in unprimed moduli with factor nu",
    ),
    "QUARTIC": CatalogEntry(_quartic, ("A", "B", "C", "D"), "quartic", "general Kummer quartic"),
    "MIRROR_CUBIC": CatalogEntry(_mirror_cubic, ("lam",), "quartic", "n=3 mirror family in affine variables"),
    "ELLIPTIC_E": CatalogEntry(_elliptic_e, ("lam",), "curve", "Legendre curve x(x-1)(x-lam)"),
    "ELLIPTIC_E_PRIME": CatalogEntry(_elliptic_e_prime, ("lam",), "curve", "two-isogenous curve E/<(0,0)>"),
}

K3_FIBRATIONS = tuple(k for k, v in CATALOG.items() if v.kind == "weierstrass")


def _coerce(v):
    if isinstance(v, (int, str)):
        from .arith import parse_rational

        return parse_rational(v) if isinstance(v, str) else Fraction(v)
    return v


def catalog(catalog_id: str, *args, **kwargs):
    """Build the model ``catalog_id`` from positional or keyword parameters."""
    try:
        entry = CATALOG[catalog_id]
    except KeyError:
        raise KeyError(f"unknown catalog id {catalog_id!r}") from None
    names = entry.params
    if kwargs:
        extra = set(kwargs) - set(names) - {"sign"}
        if extra or args:
            raise TypeError(f"{catalog_id} takes parameters {names}, got {sorted(kwargs)}")
        missing = [n for n in names if n not in kwargs]
        if missing:
            raise TypeError(f"{catalog_id} missing parameters {missing}")
        args = tuple(kwargs[n] for n in names)
    if len(args) != len(names):
        raise TypeError(f"{catalog_id} expects {len(names)} parameters {names}, got {len(args)}")
    values = tuple(_coerce(a) for a in args)
    return entry.builder(*values)


def params_for(catalog_id: str) -> tuple[str, ...]:
    return CATALOG[catalog_id].params


# --------------------------------------------------------------------------
# Discriminant machinery
# --------------------------------------------------------------------------

class SingularSurface(ValueError):
    pass


def c4_c6_delta(surface: WeierstrassSurface) -> tuple[UniPoly, UniPoly, UniPoly]:
    b2, b4, b6 = surface.a2.scale(4), surface.a4.scale(2), surface.a6.scale(4)
    c4 = b2 * b2 - b4.scale(24)
    c6 = -(b2 * b2 * b2) + (b2 * b4).scale(36) - b6.scale(216)
    delta = (c4 * c4 * c4 - c6 * c6).scale(Fraction(1, 1728))
    if not delta:
        raise SingularSurface(f"{surface.catalog_id}: discriminant vanishes identically")
    return c4, c6, delta


def dump_surface(surface: WeierstrassSurface) -> str:
    return json.dumps(surface.to_json(), sort_keys=True)


# --------------------------------------------------------------------------
# Torsion section of the mirror fibration
# --------------------------------------------------------------------------

def mirror_torsion_section(lam, printed: bool = False) -> UniPoly:
    """X-coordinate of the two-torsion section of the mirror fibration (4X^3 form).

    ``printed=True`` returns -u(4u - u^2 - 1)/(3λ^2); the default returns
    -u(4λ^2 u + u^2 + 1)/(3λ^2), which is the root of 4X^3 - g2 X - g3.
    """
    lam = Fraction(lam)
    c = Fraction(-1) / (3 * lam * lam)
    if printed:
        return (_u * _poly(-1, 4, -1)).scale(c)
    return (_u * _poly(1, 4 * lam * lam, 1)).scale(c)


def mirror_cubic_residual(lam, section: UniPoly) -> UniPoly:
    """4X^3 - g2 X - g3 evaluated at X = section(u), as a polynomial in u."""
    g2, g3 = _mirror_g2g3(Fraction(lam))
    return section * section * section * 4 - g2 * section - g3


# --------------------------------------------------------------------------
# Narumiya-Shiga substitution
# --------------------------------------------------------------------------

@dataclass
class SubstitutionReport:
    lam: str
    p: int
    trials: int
    passes: int = 0
    failures: list = field(default_factory=list)
    excluded: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures and self.passes > 0


def narumiya_shiga_substitution_check(lam, ctx: PrimeField, trials: int = 50, seed: int = 0) -> SubstitutionReport:
    """Sample (u, X, Y) on the 4X^3 mirror model mod p, push through the substitution, test the mirror cubic."""
    import random

    p = ctx.p
    if p % 4 != 1:
        raise ValueError(f"p = {p} is not 1 mod 4, so sqrt(-1) is not in F_p")
    lam_p = ctx(lam)
    if not lam_p:
        raise ValueError("lambda vanishes mod p")
    i = ctx(sqrt_mod_p(p - 1, ctx))
    g2q, g3q = _mirror_g2g3(Fraction(lam))
    g2 = g2q.map_coeffs(lambda c: ctx(c))
    g3 = g3q.map_coeffs(lambda c: ctx(c))
    mu = 1 / lam_p**4
    rng = random.Random(seed)
    rep = SubstitutionReport(format_rational(Fraction(lam)), p, trials)
    attempts = 0
    while rep.passes + len(rep.failures) + rep.excluded < trials:
        attempts += 1
        if attempts > 200 * trials:
            raise RuntimeError("could not sample enough points")
        u, X = ctx(rng.randrange(p)), ctx(rng.randrange(p))
        rhs = 4 * X**3 - g2(u) * X - g3(u)
        r = sqrt_mod_p(int(rhs), ctx)
        if r is None:
            continue
        Y = ctx(r) if rng.random() < 0.5 else -ctx(r)
        L2 = lam_p * lam_p
        A = 4 * u * u * L2 + 3 * X * L2 + u**3 + u
        B = 4 * u * u * L2 + 3 * X * L2 + u**3 - 2 * u
        D = 16 * u**3 * L2 - 3 * i * Y * L2 + 12 * X * u * L2 + 4 * u**4 + 4 * u * u
        den1, den2, den3 = 6 * L2 * u * D, 8 * u * B, 2 * L2 * D
        if not den1 or not den2 or not den3:
            rep.excluded += 1
            continue
        x1 = -(A * B) / den1
        x2 = -D / den2
        x3 = u * u * B / den3
        value = x1 * x2 * x3 * (x1 + x2 + x3 + 1) + mu / 256
        if value:
            rep.failures.append({"u": int(u), "X": int(X), "Y": int(Y)})
        else:
            rep.passes += 1
    return rep
