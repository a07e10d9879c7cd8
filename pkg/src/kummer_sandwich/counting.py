"""Point counting over F_p: character sums, the closed-form count, counting relations and Jacobian orders."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import kernels
from .arith import BadReduction, Fp, PrimeField, QuadExt, binomials_mod_p, format_rational, sqrt_mod_p
from .moduli import DegenerateModuli, LevelTwoModuli, level_two_from_rosenhain, richelot_transform
from .poly import UniPoly
from .surfaces import AffineDoubleCover, WeierstrassSurface, catalog

KERNELS = ("naive", "convolution")


# --------------------------------------------------------------------------
# Character sums
# --------------------------------------------------------------------------

def _reduced_matrix(matrix: list[list], ctx: PrimeField) -> list[list[int]]:
    return [[ctx.reduce(c) for c in row] for row in matrix]


def character_sum_count(cover: AffineDoubleCover, ctx: PrimeField, threads: int | None = None) -> int:
    """Sum over (x, w) in F_p^2 of f(x, w)^((p-1)/2), as a residue in [0, p)."""
    matrix = _reduced_matrix(cover.f.coefficient_matrix(), ctx)
    return kernels.charsum_matrix(matrix, ctx.p, ctx.residue_table, threads)


def weierstrass_matrix(surface: WeierstrassSurface) -> list[list]:
    """Coefficient matrix in (x, u) of x^3 + a2(u) x^2 + a4(u) x + a6(u)."""
    width = max(surface.a2.degree, surface.a4.degree, surface.a6.degree, 0) + 1
    m = [[0] * width for _ in range(4)]
    m[3][0] = 1
    for row, poly in ((2, surface.a2), (1, surface.a4), (0, surface.a6)):
        for j, c in enumerate(poly.coeffs):
            m[row][j] = c
    return m


def weierstrass_character_sum(surface: WeierstrassSurface, ctx: PrimeField, threads: int | None = None) -> int:
    """Sum over the affine (u, x) plane of the Legendre symbol of the right-hand side, mod p."""
    matrix = _reduced_matrix(weierstrass_matrix(surface), ctx)
    return kernels.charsum_matrix(matrix, ctx.p, ctx.residue_table, threads)


def affine_point_count(cover: AffineDoubleCover, ctx: PrimeField) -> int:
    """Literal number of (x, w, y) in F_p^3 on y^2 = f(x, w).

    Each (x, w) contributes 1 + chi(f), so the total is p^2 + sum chi(f) as an
    integer, with f = 0 contributing exactly one point.
    """
    p, chi = ctx.p, ctx.residue_table
    f = cover.reduce(ctx).f.map_coeffs(int)
    total = 0
    for x in range(p):
        for w in range(p):
            total += 1 + chi[f(x, w) % p]
    return total


# --------------------------------------------------------------------------
# Closed form
# --------------------------------------------------------------------------

def main2_cover(a, b, c) -> AffineDoubleCover:
    """y^2 = -(x^2 - 4)(x - w)(w - a)(w - b)(w - c)."""
    return catalog("LEGENDRE17", a, b, c)


def closed_form_count(a, b, c, ctx: PrimeField, kernel: str = "convolution") -> int:
    """Binomial closed form for the character sum of :func:`main2_cover`."""
    if kernel not in KERNELS:
        raise ValueError(f"kernel must be one of {KERNELS}, got {kernel!r}")
    p = ctx.p
    ra, rb, rc = ctx.reduce(a), ctx.reduce(b), ctx.reduce(c)
    binom = binomials_mod_p(ctx.half, ctx)
    fn = kernels.closed_form_naive if kernel == "naive" else kernels.closed_form_conv
    return fn(ra, rb, rc, p, binom)


@dataclass
class CountReport:
    p: int
    a: str
    b: str
    c: str
    closed_form: int
    character_sum: int
    closed_form_naive: int
    t_naive_ns: int | None = None
    t_conv_ns: int | None = None

    @property
    def agree(self) -> bool:
        return self.closed_form == self.character_sum == self.closed_form_naive

    def row(self, timing: bool = False) -> dict:
        out = {
            "p": self.p,
            "a": self.a,
            "b": self.b,
            "c": self.c,
            "closed_form": self.closed_form,
            "character_sum": self.character_sum,
            "agree": self.agree,
        }
        if timing:
            out["t_naive_ns"] = self.t_naive_ns
            out["t_conv_ns"] = self.t_conv_ns
        return out


def count_report(a, b, c, ctx: PrimeField, threads: int | None = None) -> CountReport:
    t0 = time.perf_counter_ns()
    naive = closed_form_count(a, b, c, ctx, "naive")
    t1 = time.perf_counter_ns()
    conv = closed_form_count(a, b, c, ctx, "convolution")
    t2 = time.perf_counter_ns()
    direct = character_sum_count(main2_cover(a, b, c), ctx, threads)
    return CountReport(
        ctx.p, format_rational(a), format_rational(b), format_rational(c),
        conv, direct, naive, t1 - t0, t2 - t1,
    )


def random_triples(p: int, count: int, seed: int) -> list[tuple[int, int, int]]:
    """Seeded triples in F_p^3, one stream per prime."""
    rng = random.Random(f"{seed}:{p}")
    return [(rng.randrange(p), rng.randrange(p), rng.randrange(p)) for _ in range(count)]


def count_sweep(
    primes: Iterable[int],
    moduli: Sequence | None = None,
    per_prime: int = 20,
    seed: int = 0,
    threads: int | None = None,
) -> tuple[list[CountReport], list[int]]:
    """Reports for fixed moduli (reduced mod each p) or seeded random triples.

    Returns (reports, primes skipped for bad reduction of the fixed moduli).
    """
    reports, skipped = [], []
    for p in primes:
        ctx = PrimeField(p)
        if moduli is not None:
            try:
                reports.append(count_report(*moduli, ctx, threads))
            except BadReduction:
                skipped.append(p)
            continue
        for a, b, c in random_triples(p, per_prime, seed):
            reports.append(count_report(a, b, c, ctx, threads))
    return reports, skipped


# --------------------------------------------------------------------------
# Twist factor and the counting relations
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class TwistFactor:
    nu: Fraction | QuadExt
    degenerate: bool  # nu = 0

    def to_json(self) -> dict:
        nu = str(self.nu) if isinstance(self.nu, QuadExt) else format_rational(self.nu)
        return {"nu": nu, "degenerate": self.degenerate}


def twist_factor(lam: LevelTwoModuli | Sequence) -> TwistFactor:
    """nu = 16 (L1 - L3)(L1 - L2) / ((L2 - L3)^2 (L1^2 - 4))."""
    L1, L2, L3 = (v if isinstance(v, QuadExt) else Fraction(v) for v in tuple(lam)[:3])
    if L2 == L3:
        raise DegenerateModuli("vanishing factor: Lambda2 - Lambda3")
    if L1 * L1 == 4:
        raise DegenerateModuli("vanishing factor: Lambda1^2 - 4")
    nu = 16 * (L1 - L3) * (L1 - L2) / ((L2 - L3) ** 2 * (L1 * L1 - 4))
    return TwistFactor(nu, nu == 0)


DESIGNATIONS = ("Y_17", "S_PRIME_17")


@dataclass
class RelationReport:
    p: int
    status: str  # "ok" or "bad_reduction"
    reason: str = ""
    y2: int | None = None  # |Y'|^(2): LEGENDRE17 at the primed moduli
    y1: int | None = None  # |Y'|^(1): LEGENDRE17_TILDE at the unprimed moduli
    s_prime: dict = field(default_factory=dict)  # designation -> count
    relation1: dict = field(default_factory=dict)  # designation -> bool
    nu_mod_p: int | None = None
    nu_residue: bool | None = None
    relation2: dict = field(default_factory=dict)  # root -> bool; empty when untestable

    @property
    def relation2_testable(self) -> bool:
        return bool(self.nu_residue)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "status": self.status,
            "reason": self.reason,
            "Y2": self.y2,
            "Y1": self.y1,
            "S_prime": self.s_prime,
            "relation1": self.relation1,
            "nu_mod_p": self.nu_mod_p,
            "nu_residue": self.nu_residue,
            "relation2": {str(k): v for k, v in self.relation2.items()},
        }


def relation_moduli(lams: Sequence) -> tuple[LevelTwoModuli, LevelTwoModuli, TwistFactor]:
    """(Λ, Λ', ν) for Rosenhain roots whose product is a rational square."""
    lam = level_two_from_rosenhain(lams)
    if not isinstance(lam.l, (int, Fraction)):
        raise ValueError("count_relation_check needs lambda1*lambda2*lambda3 to be a rational square")
    return lam, richelot_transform(lam), twist_factor(lam)


def count_relation_check(lams: Sequence, ctx: PrimeField) -> RelationReport:
    """Compute |Y'|^(2), |Y'|^(1) and both |S'| candidates and test both relations mod p."""
    lam, lam_p, twist = relation_moduli(lams)
    p = ctx.p
    report = RelationReport(p, "ok")
    try:
        for v, label in ((lam.L2 - lam.L3, "Lambda2 - Lambda3"), (lam.L1 * lam.L1 - 4, "Lambda1^2 - 4"),
                         (lam_p.L2 - lam_p.L3, "Lambda'2 - Lambda'3"), (twist.nu, "nu")):
            if ctx.reduce(v) == 0:
                raise BadReduction(f"{label} vanishes mod {p}")
        report.y2 = character_sum_count(catalog("LEGENDRE17", *lam_p), ctx)
        report.y1 = character_sum_count(catalog("LEGENDRE17_TILDE", *lam), ctx)
        for d in DESIGNATIONS:
            report.s_prime[d] = weierstrass_character_sum(catalog(d, *lam_p), ctx)
        nu = ctx.reduce(twist.nu)
    except BadReduction as exc:
        return RelationReport(p, "bad_reduction", str(exc))
    report.relation1 = {d: v == 2 * report.y1 % p for d, v in report.s_prime.items()}
    report.nu_mod_p = nu
    root = sqrt_mod_p(nu, ctx)
    report.nu_residue = root is not None
    if root is not None:
        report.relation2 = {r: report.y2 == r * report.y1 % p for r in sorted({root, (p - root) % p})}
    return report


def relation_summary(reports: Sequence[RelationReport]) -> dict:
    """Designations and branches consistent with every testable prime."""
    good = [r for r in reports if r.status == "ok"]
    uniform = [d for d in DESIGNATIONS if good and all(r.relation1[d] for r in good)]
    testable = [r for r in good if r.relation2_testable]
    branch_ok = bool(testable) and all(any(r.relation2.values()) for r in testable)
    return {
        "primes": [r.p for r in good],
        "bad_reduction": [r.p for r in reports if r.status != "ok"],
        "relation1_designations": uniform,
        "relation1_holds": bool(uniform),
        "relation2_testable_primes": [r.p for r in testable],
        "relation2_holds": branch_ok,
    }


# --------------------------------------------------------------------------
# Genus-two Jacobians
# --------------------------------------------------------------------------

class NotSquarefree(ValueError):
    pass


@dataclass(frozen=True)
class JacobianReport:
    p: int
    curve: tuple[int, ...]
    N1: int
    N2: int
    jac_order: int

    @property
    def weil_interval(self) -> tuple[float, float]:
        r = self.p**0.5
        return (r - 1) ** 4, (r + 1) ** 4

    @property
    def in_weil_interval(self) -> bool:
        lo, hi = self.weil_interval
        return lo <= self.jac_order <= hi

    def to_json(self) -> dict:
        return {"p": self.p, "curve": list(self.curve), "N1": self.N1, "N2": self.N2, "jac_order": self.jac_order}


def _check_genus_two(coeffs: list[int], ctx: PrimeField) -> UniPoly:
    f = UniPoly(Fp(c, ctx.p) for c in coeffs)
    if f.degree not in (5, 6):
        raise ValueError(f"genus-two model needs degree 5 or 6 mod {ctx.p}, got {f.degree}")
    if f.gcd(f.derivative()).degree > 0:
        raise NotSquarefree(f"curve is not squarefree mod {ctx.p}")
    return f


def _quadratic_chi(a: int, b: int, n: int, p: int, chi: list[int]) -> int:
    """Quadratic character of a + b s in F_p[s]/(s^2 - n): chi of the norm."""
    return chi[(a * a - n * b * b) % p]


def jacobian_order(coeffs: Sequence, ctx: PrimeField) -> JacobianReport:
    """#Jac(F_p) = (N1^2 + N2)/2 - p for y^2 = f(x), coefficients ascending.

    Points at infinity: one for degree 5; for degree 6, 1 + chi(lead) over F_p and
    2 over F_p^2.  F_p^2 is F_p[s]/(s^2 - n) with n the smallest non-residue.
    """
    p, chi = ctx.p, ctx.residue_table
    ints = [ctx.reduce(c) for c in coeffs]
    f = _check_genus_two(ints, ctx)
    cs = [int(c) for c in f.coeffs]
    deg = f.degree
    n1 = sum(1 + chi[_horner(cs, x, p)] for x in range(p))
    n2 = 0
    n = ctx.smallest_nonresidue
    for a in range(p):
        for b in range(p):
            ea, eb = _horner_ext(cs, a, b, n, p)
            n2 += 1 + (0 if ea == eb == 0 else _quadratic_chi(ea, eb, n, p, chi))
    if deg == 5:
        n1 += 1
        n2 += 1
    else:
        n1 += 1 + chi[cs[-1]]
        n2 += 2
    if (n1 * n1 + n2) % 2:
        raise ArithmeticError("N1^2 + N2 is odd; this indicates a counting defect")
    return JacobianReport(p, tuple(ints), n1, n2, (n1 * n1 + n2) // 2 - p)


def _horner(cs: list[int], x: int, p: int) -> int:
    acc = 0
    for c in reversed(cs):
        acc = (acc * x + c) % p
    return acc


def _horner_ext(cs: list[int], a: int, b: int, n: int, p: int) -> tuple[int, int]:
    ra, rb = 0, 0
    for c in reversed(cs):
        ra, rb = (ra * a + n * rb * b + c) % p, (ra * b + rb * a) % p
    return ra, rb


def random_genus_two(ctx: PrimeField, rng: random.Random, degree: int | None = None) -> list[int]:
    """Seeded squarefree quintic or sextic over F_p, coefficients ascending."""
    p = ctx.p
    while True:
        deg = degree or rng.choice((5, 6))
        coeffs = [rng.randrange(p) for _ in range(deg)] + [rng.randrange(1, p)]
        try:
            _check_genus_two(coeffs, ctx)
        except NotSquarefree:
            continue
        return coeffs
