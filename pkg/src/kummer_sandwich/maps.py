"""Closed catalog of rational maps, involutions and two-isogenies between the fibration models.

Every evaluator is written against generic field scalars, so the same code runs
over Q and over F_p.  Verification samples points on the source model over a
large prime field and checks membership of the image in the target model.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .arith import BadReduction, Fp, PrimeField, format_rational, sqrt_mod_p
from .moduli import jacobi_modulus_dual
from .poly import UniPoly
from .surfaces import WeierstrassSurface, catalog


class ExceptionalPoint(ZeroDivisionError):
    """The input lies on the exceptional locus; ``denominator`` names the vanishing factor."""

    def __init__(self, denominator: str):
        super().__init__(f"exceptional point: {denominator} = 0")
        self.denominator = denominator


class SamplingError(RuntimeError):
    pass


@dataclass(frozen=True)
class FiberedPoint:
    base: object
    x: object
    y: object

    def as_ints(self) -> list[int]:
        return [int(self.base), int(self.x), int(self.y)]


def _div(num, den, label: str):
    if not den:
        raise ExceptionalPoint(label)
    return num / den


# --------------------------------------------------------------------------
# Evaluators: (point, source model) -> point
# --------------------------------------------------------------------------

def _psi(pt: FiberedPoint, src: WeierstrassSurface) -> FiberedPoint:
    t = pt.base
    t2 = t * t
    return FiberedPoint(t2, t2 * pt.x, t2 * t * pt.y)


def _phi(pt: FiberedPoint, src: WeierstrassSurface) -> FiberedPoint:
    u = pt.base
    if not u:
        raise ExceptionalPoint("u")
    u2 = u * u
    w = (u2 - 1) / u2
    return FiberedPoint(u + 1 / u, w * w * pt.x, w * w * w * pt.y)


def _isogeny(pt: FiberedPoint, src: WeierstrassSurface) -> FiberedPoint:
    X, Y = pt.x, pt.y
    p1 = src.a4(pt.base)
    X2 = X * X
    return FiberedPoint(pt.base, _div(Y * Y, 4 * X2, "X"), _div(Y * (X2 - p1), 8 * X2, "X"))


def _dual_isogeny(pt: FiberedPoint, src: WeierstrassSurface) -> FiberedPoint:
    # y (16 x^2 - p2^2 + 4 p1) / (16 x^2) with the source a4 = (p2^2 - 4 p1)/16
    x, y = pt.x, pt.y
    q = src.a4(pt.base)
    x2 = x * x
    return FiberedPoint(pt.base, _div(y * y, x2, "x"), _div(y * (x2 - q), x2, "x"))


def _iota(pt: FiberedPoint, src: WeierstrassSurface) -> FiberedPoint:
    return FiberedPoint(-pt.base, pt.x, -pt.y)


def _jmath(pt: FiberedPoint, src: WeierstrassSurface) -> FiberedPoint:
    t = pt.base
    if not t:
        raise ExceptionalPoint("t")
    t2 = t * t
    t4 = t2 * t2
    return FiberedPoint(1 / t, pt.x / t4, -pt.y / (t4 * t2))


def _vgs_translation(pt: FiberedPoint, src: WeierstrassSurface) -> FiberedPoint:
    X, Y = pt.x, pt.y
    p1 = src.a4(pt.base)
    return FiberedPoint(pt.base, _div(p1, X, "X"), _div(-p1 * Y, X * X, "X"))


# --------------------------------------------------------------------------
# Catalog
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class MapDescriptor:
    map_id: str
    source_id: str
    target_id: str
    degree: int
    two_form_factor: Fraction  # metadata only, never verified
    kind: str  # "quotient", "isogeny" or "involution"
    family: str  # "rank18" or "rank17"
    evaluator: Callable = field(repr=False, compare=False)


def _m(map_id, src, tgt, degree, factor, kind, family, fn) -> MapDescriptor:
    return MapDescriptor(map_id, src, tgt, degree, Fraction(factor), kind, family, fn)


MAPS: dict[str, MapDescriptor] = {
    m.map_id: m
    for m in (
        _m("PSI_18", "J1", "Y_RANK18", 2, 2, "quotient", "rank18", _psi),
        _m("PHI_18", "Y_RANK18", "J7", 2, 1, "quotient", "rank18", _phi),
        _m("ISOG_18", "Y_RANK18", "S_PRIME_RANK18", 2, 1, "isogeny", "rank18", _isogeny),
        _m("DUAL_ISOG_18", "S_PRIME_RANK18", "Y_RANK18", 2, 2, "isogeny", "rank18", _dual_isogeny),
        _m("PHI_PRIME_18", "S_PRIME_RANK18", "Y_PRIME_RANK18", 2, 1, "quotient", "rank18", _phi),
        _m("CHI_18", "J7", "Y_PRIME_RANK18", 2, 1, "isogeny", "rank18", _isogeny),
        _m("CHI_PRIME_18", "Y_PRIME_RANK18", "J7", 2, 2, "isogeny", "rank18", _dual_isogeny),
        _m("IOTA_18", "J1", "J1", 1, 1, "involution", "rank18", _iota),
        _m("JMATH_18", "J1", "J1", 1, 1, "involution", "rank18", _jmath),
        _m("JPP_18", "Y_RANK18", "Y_RANK18", 1, 1, "involution", "rank18", _jmath),
        _m("JPRIME_18", "S_PRIME_RANK18", "S_PRIME_RANK18", 1, 1, "involution", "rank18", _jmath),
        _m("VGS_K_18", "Y_RANK18", "Y_RANK18", 1, 1, "involution", "rank18", _vgs_translation),
        _m("K_PRIME_18", "S_PRIME_RANK18", "S_PRIME_RANK18", 1, 1, "involution", "rank18", _vgs_translation),
        _m("PSI_17", "S_17_A", "Y_17", 2, 2, "quotient", "rank17", _psi),
        _m("PHI_17", "Y_17", "S_17_B", 2, 1, "quotient", "rank17", _phi),
        _m("ISOG_17", "Y_17", "S_PRIME_17", 2, 1, "isogeny", "rank17", _isogeny),
        _m("DUAL_ISOG_17", "S_PRIME_17", "Y_17", 2, 2, "isogeny", "rank17", _dual_isogeny),
        _m("PHI_PRIME_17", "S_PRIME_17", "Y_PRIME_17", 2, 1, "quotient", "rank17", _phi),
        _m("CHI_17", "S_17_B", "Y_PRIME_17", 2, 1, "isogeny", "rank17", _isogeny),
        _m("CHI_PRIME_17", "Y_PRIME_17", "S_17_B", 2, 2, "isogeny", "rank17", _dual_isogeny),
        _m("IOTA_17", "S_17_A", "S_17_A", 1, 1, "involution", "rank17", _iota),
        _m("JMATH_17", "S_17_A", "S_17_A", 1, 1, "involution", "rank17", _jmath),
        _m("JPRIME_17", "Y_17", "Y_17", 1, 1, "involution", "rank17", _jmath),
        _m("VGS_K_17", "Y_17", "Y_17", 1, 1, "involution", "rank17", _vgs_translation),
        _m("K_PRIME_17", "S_PRIME_17", "S_PRIME_17", 1, 1, "involution", "rank17", _vgs_translation),
    )
}

# Composites, applied left to right.  The two sandwich chains of each rank end on Y'.
COMPOSITES: dict[str, tuple[str, ...]] = {
    "PSI_BIG_18": ("PSI_18", "ISOG_18"),
    "PSI_BIG_PRIME_18": ("DUAL_ISOG_18", "PHI_18"),
    "PHI_PSI_18": ("PSI_18", "PHI_18"),
    "CHAIN_A_18": ("PSI_18", "PHI_18", "CHI_18"),
    "CHAIN_B_18": ("PSI_18", "ISOG_18", "PHI_PRIME_18"),
    "PSI_BIG_17": ("PSI_17", "ISOG_17"),
    "PSI_BIG_PRIME_17": ("DUAL_ISOG_17", "PHI_17"),
    "PHI_PSI_17": ("PSI_17", "PHI_17"),
    "CHAIN_A_17": ("PSI_17", "PHI_17", "CHI_17"),
    "CHAIN_B_17": ("PSI_17", "ISOG_17", "PHI_PRIME_17"),
}

FAMILY_PARAMS = {"rank18": ("l1", "l2"), "rank17": ("L1", "L2", "L3")}

# Largest total degree of the identities checked; used for the Schwartz-Zippel bound.
IDENTITY_DEGREE = 24


def get_map(map_id: str) -> MapDescriptor:
    try:
        return MAPS[map_id]
    except KeyError:
        raise KeyError(f"unknown map id {map_id!r}") from None


def apply_map(map_id: str | MapDescriptor, point: FiberedPoint, source: WeierstrassSurface) -> FiberedPoint:
    """Evaluate a catalog map; ``source`` supplies the coefficients used by isogenies."""
    desc = map_id if isinstance(map_id, MapDescriptor) else get_map(map_id)
    return desc.evaluator(point, source)


# --------------------------------------------------------------------------
# VGS quotient at the coefficient level
# --------------------------------------------------------------------------

def vgs_quotient(surface: WeierstrassSurface) -> WeierstrassSurface:
    """y^2 = x^3 - (p2/2) x^2 + ((p2^2/4 - p1)/4) x for y^2 = x^3 + p2 x^2 + p1 x.

    Applied twice it returns the input rescaled by s = 1/2, i.e. (a2/4, a4/16).
    """
    if surface.a6:
        raise ValueError("vgs_quotient needs a6 = 0 (two-torsion section at x = 0)")
    if not surface.a4:
        raise ValueError("vgs_quotient needs a4 != 0")
    p2, p1 = surface.a2, surface.a4
    a2 = p2.scale(Fraction(-1, 2))
    a4 = (p2 * p2).scale(Fraction(1, 16)) - p1.scale(Fraction(1, 4))
    return WeierstrassSurface(a2, a4, UniPoly(), f"VGS({surface.catalog_id})", surface.base_variable)


# --------------------------------------------------------------------------
# Sampling and verification over F_p
# --------------------------------------------------------------------------

MAX_DRAWS = 256


def sample_point(surface: WeierstrassSurface, ctx: PrimeField, seed=0) -> FiberedPoint:
    """Uniform base and x until the right-hand side is a square; deterministic per seed.

    ``surface`` may have rational coefficients (reduced here) or F_p coefficients.
    """
    reduced = _reduced(surface, ctx)
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    p = ctx.p
    for _ in range(MAX_DRAWS):
        base, x = Fp(rng.randrange(p), p), Fp(rng.randrange(p), p)
        r = sqrt_mod_p(int(reduced.rhs(base, x)), ctx)
        if r is None:
            continue
        y = Fp(r if rng.random() < 0.5 else -r, p)
        return FiberedPoint(base, x, y)
    raise SamplingError(f"no point on {surface.catalog_id} after {MAX_DRAWS} draws mod {p}")


def _reduced(surface: WeierstrassSurface, ctx: PrimeField) -> WeierstrassSurface:
    coeffs = surface.a2.coeffs + surface.a4.coeffs + surface.a6.coeffs
    if all(isinstance(c, Fp) for c in coeffs):
        return surface
    return surface.reduce(ctx)


@dataclass
class MapReport:
    map_id: str
    p: int
    trials: int
    passes: int = 0
    failures: list = field(default_factory=list)
    exceptional_skips: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures and self.passes > 0

    @property
    def failure_bound(self) -> float:
        """Schwartz-Zippel bound on missing a false identity."""
        return self.trials * IDENTITY_DEGREE / self.p

    def to_json(self) -> dict:
        return {
            "map_id": self.map_id,
            "p": self.p,
            "trials": self.trials,
            "passes": self.passes,
            "failures": self.failures,
            "exceptional_skips": self.exceptional_skips,
        }


def _models(map_ids: Sequence[str], params: Sequence, ctx: PrimeField) -> list[WeierstrassSurface]:
    """Reduced source model of the first map followed by the target of each map."""
    ids = [get_map(map_ids[0]).source_id] + [get_map(m).target_id for m in map_ids]
    return [catalog(i, *params).reduce(ctx) for i in ids]


def verify_map(map_id: str, params: Sequence, ctx: PrimeField, trials: int = 100, seed: int = 0) -> MapReport:
    """Sample source points and check the image lies on the target.

    Involutions must also square to the identity.  Composite ids from
    :data:`COMPOSITES` check every intermediate model along the chain.
    """
    chain = COMPOSITES.get(map_id, (map_id,))
    descs = [get_map(m) for m in chain]
    models = _models(chain, params, ctx)
    rng = random.Random(seed)
    report = MapReport(map_id, ctx.p, trials)
    for _ in range(trials):
        pt = sample_point(models[0], ctx, rng)
        try:
            ok = _run_chain(descs, models, pt)
        except ExceptionalPoint:
            report.exceptional_skips += 1
            continue
        if ok:
            report.passes += 1
        else:
            report.failures.append(pt.as_ints())
    return report


def _run_chain(descs, models, pt: FiberedPoint) -> bool:
    cur = pt
    for desc, src, tgt in zip(descs, models, models[1:]):
        cur = desc.evaluator(cur, src)
        if not tgt.contains(cur.base, cur.x, cur.y):
            return False
    if len(descs) == 1 and descs[0].kind == "involution":
        return descs[0].evaluator(cur, models[0]) == pt
    return True


def commutation_check(family: str, params: Sequence, ctx: PrimeField, trials: int = 100, seed: int = 0) -> MapReport:
    """iota o jmath = jmath o iota on the Kummer model of ``family``."""
    suffix = "18" if family == "rank18" else "17"
    iota, jmath = get_map(f"IOTA_{suffix}"), get_map(f"JMATH_{suffix}")
    surface = catalog(iota.source_id, *params).reduce(ctx)
    rng = random.Random(seed)
    report = MapReport(f"IOTA_JMATH_COMMUTE_{suffix}", ctx.p, trials)
    for _ in range(trials):
        pt = sample_point(surface, ctx, rng)
        try:
            a = jmath.evaluator(iota.evaluator(pt, surface), surface)
            b = iota.evaluator(jmath.evaluator(pt, surface), surface)
        except ExceptionalPoint:
            report.exceptional_skips += 1
            continue
        if a == b:
            report.passes += 1
        else:
            report.failures.append(pt.as_ints())
    return report


def doubling_x(pt: FiberedPoint, surface: WeierstrassSurface):
    """x-coordinate of 2P on the fiber through ``pt``."""
    u, x, y = pt.base, pt.x, pt.y
    a2, a4 = surface.a2(u), surface.a4(u)
    slope = _div(3 * x * x + 2 * a2 * x + a4, 2 * y, "2y")
    return slope * slope - a2 - 2 * x


def isogeny_doubling_check(family: str, params: Sequence, ctx: PrimeField, trials: int = 100, seed: int = 0) -> MapReport:
    """DUAL_ISOG o ISOG lands back on the source and has the x-coordinate of 2P."""
    suffix = "18" if family == "rank18" else "17"
    isog, dual = get_map(f"ISOG_{suffix}"), get_map(f"DUAL_ISOG_{suffix}")
    src, mid = _models((isog.map_id,), params, ctx)
    rng = random.Random(seed)
    report = MapReport(f"DUAL_ISOG_COMPOSE_ISOG_{suffix}", ctx.p, trials)
    for _ in range(trials):
        pt = sample_point(src, ctx, rng)
        try:
            image = dual.evaluator(isog.evaluator(pt, src), mid)
            ok = src.contains(image.base, image.x, image.y) and image.x == doubling_x(pt, src)
        except ExceptionalPoint:
            report.exceptional_skips += 1
            continue
        if ok:
            report.passes += 1
        else:
            report.failures.append(pt.as_ints())
    return report


# --------------------------------------------------------------------------
# Exact coefficient-level checks
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class QuotientFinding:
    source_id: str
    target_id: str
    matches: bool
    computed: dict
    expected: dict

    def to_json(self) -> dict:
        return {
            "source": self.source_id,
            "target": self.target_id,
            "matches": self.matches,
            "computed": self.computed,
            "expected": self.expected,
        }


def quotient_identity(source_id: str, target_id: str, params: Sequence) -> QuotientFinding:
    """Compare vgs_quotient(source) with the catalog model ``target`` coefficient by coefficient."""
    computed = vgs_quotient(catalog(source_id, *params))
    expected = catalog(target_id, *params)
    return QuotientFinding(source_id, target_id, computed.same_coefficients(expected), computed.to_json(), expected.to_json())


QUOTIENT_PAIRS = (
    ("Y_RANK18", "S_PRIME_RANK18"),
    ("J7", "Y_PRIME_RANK18"),
    ("Y_17", "S_PRIME_17"),
    ("S_17_B", "Y_PRIME_17"),
)


def zfib_reading_finding(l1, l2) -> dict:
    """Which inner-factor reading of the rank-18 Y' model is the VGS quotient of J7."""
    corrected = quotient_identity("J7", "Y_PRIME_RANK18", (l1, l2))
    printed = quotient_identity("J7", "Y_PRIME_RANK18_PRINTED", (l1, l2))
    return {
        "inner_factor_2": corrected.matches,
        "inner_factor_1_as_printed": printed.matches,
        "consistent_reading": "inner_factor_2" if corrected.matches else ("inner_factor_1" if printed.matches else None),
    }


DEGENERATION_PAIRS = (
    ("S_17_A", "J1"),
    ("Y_17", "Y_RANK18"),
    ("S_17_B", "J7"),
    ("S_PRIME_17", "S_PRIME_RANK18"),
    ("Y_PRIME_17", "Y_PRIME_RANK18"),
)


def degeneration_limit(catalog_id: str, k1, k2) -> WeierstrassSurface:
    """Limit eps -> 0 of the rank-17 model on the pencil, rescaled by (x, y) -> (x/eps^2, y/eps^3).

    With k'_n = (1 - k_n)/(1 + k_n) and eps' = 2 eps / ((k1 + 1)(k2 - 1)), Λ'2 and Λ'3 are
    constant while Λ'1 = scale/eps^2 + O(eps^2).  After the rescale only the
    top power of Λ'1 in a_k survives, weighted by scale^(k/2).
    """
    k1, k2 = Fraction(k1), Fraction(k2)
    k1p, k2p = jacobi_modulus_dual(k1), jacobi_modulus_dual(k2)
    gamma = ((k1 + 1) * (k2 - 1)) ** 2 / 4
    scale = gamma * k1p / k2p
    L2 = k1p / k2p + k2p / k1p
    L3 = k1p * k2p + 1 / (k1p * k2p)
    formal = catalog(catalog_id, UniPoly.gen(), L2, L3)

    def top(poly: UniPoly, power: int) -> UniPoly:
        return UniPoly(UniPoly._lift(c)[power] * scale**power for c in poly.coeffs)

    return WeierstrassSurface(top(formal.a2, 1), top(formal.a4, 2), UniPoly(), f"LIMIT({catalog_id})", formal.base_variable)


def degeneration_check(k1, k2) -> list[dict]:
    """Each rank-17 model in the limit against the rank-18 model with λ_n = k_n^2."""
    k1, k2 = Fraction(k1), Fraction(k2)
    out = []
    for src, tgt in DEGENERATION_PAIRS:
        limit = degeneration_limit(src, k1, k2)
        expected = catalog(tgt, k1 * k1, k2 * k2)
        out.append({
            "rank17": src,
            "rank18": tgt,
            "k1": format_rational(k1),
            "k2": format_rational(k2),
            "matches": limit.same_coefficients(expected),
        })
    return out


__all__ = [
    "BadReduction",
    "COMPOSITES",
    "ExceptionalPoint",
    "FiberedPoint",
    "MAPS",
    "MapDescriptor",
    "MapReport",
    "SamplingError",
    "apply_map",
    "commutation_check",
    "degeneration_check",
    "degeneration_limit",
    "doubling_x",
    "get_map",
    "isogeny_doubling_check",
    "quotient_identity",
    "sample_point",
    "verify_map",
    "vgs_quotient",
    "zfib_reading_finding",
]
