"""Rational maps between the fibrations: symbolic and sampled checks."""

from fractions import Fraction

import pytest
import sympy

from kummer_sandwich.arith import BadReduction, PrimeField
from kummer_sandwich.maps import (
    COMPOSITES,
    DEGENERATION_PAIRS,
    MAPS,
    QUOTIENT_PAIRS,
    ExceptionalPoint,
    FiberedPoint,
    SamplingError,
    apply_map,
    commutation_check,
    degeneration_check,
    isogeny_doubling_check,
    quotient_identity,
    sample_point,
    verify_map,
    vgs_quotient,
    zfib_reading_finding,
)
from kummer_sandwich.poly import UniPoly
from kummer_sandwich.surfaces import WeierstrassSurface, catalog

F = Fraction
P = 2**31 - 1
PARAMS = {"rank18": (F(3, 7), F(-5, 2)), "rank17": (F(7, 3), F(-2, 5), F(11, 4))}
U, X, Y = sympy.symbols("u x y")


def reduce_mod_curve(expr, rhs):
    """Numerator of expr with y^2 replaced by rhs(u, x)."""
    num = sympy.numer(sympy.together(expr))
    poly = sympy.Poly(sympy.expand(num), Y)
    return sympy.expand(sympy.rem(poly, sympy.Poly(Y**2 - rhs, Y)).as_expr())


@pytest.mark.parametrize("map_id", sorted(MAPS))
def test_map_is_an_identity_of_rational_functions(map_id):
    desc = MAPS[map_id]
    params = PARAMS[desc.family]
    src, tgt = catalog(desc.source_id, *params), catalog(desc.target_id, *params)
    image = desc.evaluator(FiberedPoint(U, X, Y), src)
    residual = image.y**2 - tgt.rhs(image.base, image.x)
    assert reduce_mod_curve(residual, src.rhs(U, X)) == 0


@pytest.mark.parametrize("map_id", sorted(list(MAPS) + list(COMPOSITES)))
def test_sampled_maps(map_id):
    family = "rank18" if map_id.endswith("18") else "rank17"
    report = verify_map(map_id, PARAMS[family], PrimeField(P), trials=30, seed=1)
    assert report.ok and report.passes + report.exceptional_skips == 30


@pytest.mark.parametrize("family", ["rank18", "rank17"])
def test_commutation_and_doubling(family):
    ctx = PrimeField(P)
    assert commutation_check(family, PARAMS[family], ctx, trials=30).ok
    assert isogeny_doubling_check(family, PARAMS[family], ctx, trials=30).ok


def test_psi_at_unit_base():
    src = catalog("J1", *PARAMS["rank18"])
    pt = FiberedPoint(F(1), F(2), F(3))
    assert apply_map("PSI_18", pt, src) == FiberedPoint(F(1), F(2), F(3))


def test_vgs_translation_of_the_section_is_exceptional():
    src = catalog("Y_RANK18", *PARAMS["rank18"])
    with pytest.raises(ExceptionalPoint):
        apply_map("VGS_K_18", FiberedPoint(F(1), F(0), F(0)), src)


def test_vgs_quotient_example():
    out = vgs_quotient(WeierstrassSurface(UniPoly(), UniPoly([1]), UniPoly()))
    assert (out.a2, out.a4) == (UniPoly(), UniPoly([F(-1, 4)]))


def test_vgs_quotient_twice_rescales_by_half():
    src = catalog("Y_RANK18", *PARAMS["rank18"])
    assert vgs_quotient(vgs_quotient(src)).same_coefficients(src.rescaled(F(1, 2)))


def test_vgs_quotient_rejects_bad_input():
    with pytest.raises(ValueError):
        vgs_quotient(WeierstrassSurface(UniPoly(), UniPoly([1]), UniPoly([1])))
    with pytest.raises(ValueError):
        vgs_quotient(WeierstrassSurface(UniPoly([1]), UniPoly(), UniPoly()))


@pytest.mark.parametrize("source, target", QUOTIENT_PAIRS)
def test_quotient_identities(source, target):
    family = "rank18" if target.endswith("18") else "rank17"
    assert quotient_identity(source, target, PARAMS[family]).matches


def test_zfib_reading():
    finding = zfib_reading_finding(*PARAMS["rank18"])
    assert finding == {"inner_factor_2": True, "inner_factor_1_as_printed": False, "consistent_reading": "inner_factor_2"}


@pytest.mark.parametrize("k1, k2", [(F(1, 3), F(5, 7)), (F(-2, 9), F(4, 11))])
def test_degeneration(k1, k2):
    rows = degeneration_check(k1, k2)
    assert [(r["rank17"], r["rank18"]) for r in rows] == list(DEGENERATION_PAIRS)
    assert all(r["matches"] for r in rows)


def test_sampling_is_reproducible():
    surface = catalog("Y_RANK18", *PARAMS["rank18"])
    ctx = PrimeField(P)
    a, b = sample_point(surface, ctx, 42), sample_point(surface, ctx, 42)
    assert a == b
    assert surface.reduce(ctx).contains(a.base, a.x, a.y)


def test_sampling_rejects_bad_prime():
    with pytest.raises(BadReduction):
        sample_point(catalog("J1", *PARAMS["rank18"]), PrimeField(7))


def test_sampling_gives_up():
    # x^3 - x vanishes on F_3, so the right-hand side is the nonresidue 2 everywhere
    surface = WeierstrassSurface(UniPoly(), UniPoly([-1]), UniPoly([2]))
    with pytest.raises(SamplingError):
        sample_point(surface, PrimeField(3), 0)
