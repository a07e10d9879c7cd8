"""Moduli formulas: exact examples and identities over Q."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from kummer_sandwich.arith import QuadExt
from kummer_sandwich.counting import twist_factor
from kummer_sandwich.moduli import (
    DegenerateModuli,
    check_rosenhain,
    cross_ratio_orbit,
    degeneration_moduli,
    elliptic_two_isogeny_modulus,
    j_invariant,
    jacobi_modulus_dual,
    kummer_quartic_params,
    level_two_from_rosenhain,
    modular_curve_x0_2_residual,
    nodal_quartic_condition,
    quartic_xi,
    richelot_transform,
    two_isogeny_locus_residual,
    x0_2_parametrization,
)

F = Fraction
rationals = st.fractions(min_value=-30, max_value=30, max_denominator=12)


@st.composite
def rosenhain(draw):
    roots = draw(st.lists(rationals, min_size=3, max_size=3, unique=True))
    assume(all(r not in (0, 1) for r in roots))
    return tuple(roots)


@st.composite
def level_two(draw):
    L = draw(st.lists(rationals, min_size=3, max_size=3))
    L1, L2, L3 = L
    assume(L2 != L3 and L1 not in (2, -2))
    assume(L1 != L2 and L1 != L3)
    return tuple(L)


def test_level_two_rational_example():
    lam = level_two_from_rosenhain((2, 3, 6))
    assert lam.as_tuple() == (F(10, 3), F(5, 2), F(2))
    assert lam.l == 6


def test_level_two_quadratic_example():
    lam = level_two_from_rosenhain((2, 3, 7))
    assert all(isinstance(v, QuadExt) and v.d == 42 for v in lam)
    assert lam.l * lam.l == 42


def test_level_two_sign_flips_every_entry():
    plus, minus = level_two_from_rosenhain((2, 3, 6), 1), level_two_from_rosenhain((2, 3, 6), -1)
    assert tuple(-v for v in plus) == minus.as_tuple()


@pytest.mark.parametrize("bad", [(0, 2, 3), (1, 2, 3), (2, 2, 3)])
def test_rosenhain_validation(bad):
    with pytest.raises(DegenerateModuli):
        check_rosenhain(bad)


@pytest.mark.parametrize(
    "lam, expected",
    [((0, 1, -1), (0, 1, -1)), ((4, 0, 2), (-6, F(-10, 3), 2))],
)
def test_richelot_examples(lam, expected):
    assert richelot_transform(lam).as_tuple() == tuple(F(v) for v in expected)


def test_richelot_names_vanishing_factor():
    with pytest.raises(DegenerateModuli, match="Lambda2 - Lambda3"):
        richelot_transform((3, 1, 1))


@given(level_two())
@settings(max_examples=100)
def test_richelot_is_an_involution(lam):
    try:
        image = richelot_transform(lam)
        back = richelot_transform(image)
    except DegenerateModuli:
        assume(False)
    assert back.as_tuple() == lam


@given(level_two())
@settings(max_examples=100)
def test_twist_factor_reciprocity(lam):
    try:
        image = richelot_transform(lam)
        nu, nu_image = twist_factor(lam), twist_factor(image)
    except DegenerateModuli:
        assume(False)
    assume(not nu.degenerate)
    assert nu.nu * nu_image.nu == 1


def test_twist_factor_examples():
    assert twist_factor((F(10, 3), F(5, 2), 2)).nu == 10
    assert twist_factor((4, 0, 2)).nu * twist_factor((-6, F(-10, 3), 2)).nu == 1
    assert twist_factor((3, 3, 1)).degenerate
    with pytest.raises(DegenerateModuli):
        twist_factor((3, 1, 1))


@pytest.mark.parametrize(
    "lams, expected",
    [((2, 3, 7), (6, 8, 5, 19)), ((2, 3, 6), (6, F(26, 3), 6, F(64, 3)))],
)
def test_kummer_params_examples(lams, expected):
    params = kummer_quartic_params(lams)
    assert (params.A, params.B, params.C, params.D) == tuple(F(v) for v in expected)


def test_kummer_d_squared_anchor():
    params = kummer_quartic_params((2, 3, 7))
    assert params.D**2 == 361 == 36 + 64 + 25 + 240 - 4


@given(rosenhain())
@settings(max_examples=100)
def test_kummer_identity_and_nodal_condition(lams):
    try:
        params = kummer_quartic_params(lams)
    except DegenerateModuli:
        assume(False)
    assert params.identity_residual() == 0
    assert nodal_quartic_condition(quartic_xi(params)) == 0


@given(rosenhain())
@settings(max_examples=50)
def test_swap_negates_c_and_d(lams):
    l1, l2, l3 = lams
    try:
        a, b = kummer_quartic_params((l1, l2, l3)), kummer_quartic_params((l1, l3, l2))
    except DegenerateModuli:
        assume(False)
    assert (b.A, b.C, b.D) == (a.A, -a.C, -a.D)


@pytest.mark.parametrize(
    "xi, expected",
    [((1, -6, -8, -5, 38), 0), ((0, 1, 1, 1, 0), 4), ((1, 0, 0, 0, 4), 32)],
)
def test_nodal_condition_examples(xi, expected):
    assert nodal_quartic_condition(xi) == expected


@pytest.mark.parametrize("lam, expected", [(F(1, 4), F(1, 9)), (9, F(1, 4))])
def test_two_isogeny_modulus_examples(lam, expected):
    assert elliptic_two_isogeny_modulus(lam) == expected


@given(st.fractions(min_value=-20, max_value=20, max_denominator=12))
def test_branch_flip_inverts(k):
    assume(k not in (0, 1, -1))
    lam = k * k
    assert elliptic_two_isogeny_modulus(lam, -1) == 1 / elliptic_two_isogeny_modulus(lam, 1)


@given(st.fractions(min_value=-20, max_value=20, max_denominator=12))
@settings(max_examples=100)
def test_two_isogeny_locus_on_parametrized_family(k):
    assume(k not in (0, 1, -1))
    l1, l2 = k * k, jacobi_modulus_dual(k) ** 2
    residual, _, on_locus = two_isogeny_locus_residual(l1, l2)
    assert residual == 0 and on_locus
    # independent check through the j-line
    assert modular_curve_x0_2_residual(j_invariant(l1), j_invariant(l2)) == 0


def test_two_isogeny_locus_examples():
    assert two_isogeny_locus_residual(F(1, 4), F(1, 9))[0] == 0
    # hand substitution at l1 = l2 = -1: 1 + 4 + 1 + 1 - 12 + 4 + 1 = 0
    assert two_isogeny_locus_residual(-1, -1)[0] == 0
    assert two_isogeny_locus_residual(2, 3)[2] is False


def test_j_invariant():
    assert j_invariant(-1) == 1728
    assert len({j_invariant(v) for v in cross_ratio_orbit(F(3, 7))}) == 1


@pytest.mark.parametrize("h", range(1, 21))
def test_x0_2_parametrization(h):
    assert modular_curve_x0_2_residual(*x0_2_parametrization(h)) == 0


@given(st.fractions(min_value=-20, max_value=20, max_denominator=12))
def test_jacobi_dual_is_involution(k):
    assume(k != -1)
    kp = jacobi_modulus_dual(k)
    assume(kp != -1)
    assert jacobi_modulus_dual(kp) == k


def test_degeneration_moduli():
    assert degeneration_moduli(1, 1, 1).as_tuple() == (2, 2, 2)
    a, b = degeneration_moduli(F(2), F(3), F(5)), degeneration_moduli(F(2), F(3), F(7))
    assert a.L2 == b.L2 and a.L3 == b.L3 and a.L1 != b.L1
