"""Character sums, the closed-form count and Jacobian orders against brute-force oracles."""

import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kummer_sandwich import kernels
from kummer_sandwich.arith import BadReduction, Fp, PrimeField, binomials_mod_p
from kummer_sandwich.counting import (
    KERNELS,
    NotSquarefree,
    affine_point_count,
    character_sum_count,
    closed_form_count,
    count_relation_check,
    count_sweep,
    jacobian_order,
    main2_cover,
    random_genus_two,
    random_triples,
    relation_summary,
    weierstrass_character_sum,
)
from kummer_sandwich.poly import BiPoly
from kummer_sandwich.surfaces import AffineDoubleCover, catalog

F = Fraction
SMALL_PRIMES = [3, 5, 7, 11, 13, 17, 19, 23]


def brute_cover_sum(a, b, c, p):
    m = (p - 1) // 2
    total = 0
    for x, w in itertools.product(range(p), repeat=2):
        value = -(x * x - 4) * (x - w) * (w - a) * (w - b) * (w - c)
        total += pow(value % p, m, p)
    return total % p


def brute_points(f, p):
    return sum(1 for x, w, y in itertools.product(range(p), repeat=3) if (y * y - f(x, w)) % p == 0)


@pytest.mark.parametrize("abc, expected", [((1, 1, 1), 1), ((1, 2, 0), 0)])
def test_anchors_at_three(abc, expected):
    ctx = PrimeField(3)
    assert brute_cover_sum(*abc, 3) == expected
    assert character_sum_count(main2_cover(*abc), ctx) == expected
    for kernel in KERNELS:
        assert closed_form_count(*abc, ctx, kernel) == expected


@given(st.sampled_from(SMALL_PRIMES), st.integers(0, 10**6), st.integers(0, 10**6), st.integers(0, 10**6))
@settings(max_examples=80, deadline=None)
def test_closed_form_matches_brute_force(p, a, b, c):
    a, b, c = a % p, b % p, c % p
    ctx = PrimeField(p)
    oracle = brute_cover_sum(a, b, c, p)
    assert character_sum_count(main2_cover(a, b, c), ctx) == oracle
    for kernel in KERNELS:
        assert closed_form_count(a, b, c, ctx, kernel) == oracle


def test_zero_triple():
    for p in (5, 7, 11):
        assert closed_form_count(0, 0, 0, PrimeField(p)) == brute_cover_sum(0, 0, 0, p)


def test_kernel_name_checked():
    with pytest.raises(ValueError):
        closed_form_count(1, 2, 3, PrimeField(5), "fft")


def test_square_polynomial_sum():
    # f = g^2 with g = x + w: chi(f) = 1 off g = 0, so the sum is the count of g != 0
    p = 7
    g = BiPoly.x() + BiPoly.w()
    cover = AffineDoubleCover(g * g)
    nonzero = sum(1 for x in range(p) for w in range(p) if (x + w) % p)
    assert character_sum_count(cover, PrimeField(p)) == nonzero % p


@pytest.mark.parametrize("p", [5, 7])
def test_affine_point_count_constants(p):
    ctx = PrimeField(p)
    assert affine_point_count(AffineDoubleCover(BiPoly.constant(F(1))), ctx) == 2 * p * p
    n = ctx.smallest_nonresidue
    assert affine_point_count(AffineDoubleCover(BiPoly.constant(F(n))), ctx) == 0


@pytest.mark.parametrize("abc", [(1, 2, 3), (0, 4, 4), (2, 2, 1)])
def test_affine_point_count_triple_loop(abc):
    cover = main2_cover(*abc)
    assert affine_point_count(cover, PrimeField(5)) == brute_points(lambda x, w: cover.f(x, w), 5)


def test_weierstrass_character_sum_brute_force():
    p = 13
    surface = catalog("J1", F(3, 7), F(-5, 2))
    red = surface.reduce(PrimeField(p))
    oracle = sum(pow(int(red.rhs(Fp(u, p), Fp(x, p))), (p - 1) // 2, p) for u in range(p) for x in range(p)) % p
    assert weierstrass_character_sum(surface, PrimeField(p)) == oracle


def test_bad_reduction_raised():
    with pytest.raises(BadReduction):
        character_sum_count(main2_cover(F(1, 3), 2, 5), PrimeField(3))


def test_backends_agree():
    backends = kernels.backends()
    rng = random.Random(5)
    for p in (3, 5, 31, 61):
        ctx = PrimeField(p)
        binom = binomials_mod_p(ctx.half, ctx)
        a, b, c = (rng.randrange(p) for _ in range(3))
        matrix = [[ctx.reduce(v) for v in row] for row in main2_cover(a, b, c).f.coefficient_matrix()]
        values = {
            (impl.charsum_matrix(matrix, p, ctx.residue_table, 1),
             impl.closed_form_naive(a, b, c, p, binom),
             impl.closed_form_conv(a, b, c, p, binom))
            for impl in backends.values()
        }
        assert len(values) == 1


def test_threaded_sum_matches_single_thread():
    ctx = PrimeField(101)
    cover = main2_cover(3, 7, 11)
    assert character_sum_count(cover, ctx, threads=4) == character_sum_count(cover, ctx, threads=1)


def test_random_triples_are_seeded():
    assert random_triples(11, 5, 3) == random_triples(11, 5, 3)
    assert random_triples(11, 5, 3) != random_triples(13, 5, 3)


def test_sweep_skips_bad_reduction():
    reports, skipped = count_sweep([3, 5, 7], moduli=(F(1, 3), 2, 5))
    assert skipped == [3]
    assert [r.p for r in reports] == [5, 7]
    assert all(r.agree for r in reports)


# --------------------------------------------------------------------------
# Jacobians
# --------------------------------------------------------------------------

def _poly_mod(num, den, p):
    """Remainder of num by monic den over F_p, coefficient lists ascending."""
    num = num[:]
    while len(num) >= len(den):
        c = num[-1] % p
        shift = len(num) - len(den)
        for i, d in enumerate(den):
            num[shift + i] = (num[shift + i] - c * d) % p
        num.pop()
    return [v % p for v in num]


def _mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    return out


def mumford_count(coeffs, p):
    """#J(F_p) for a quintic model by enumerating reduced Mumford pairs (u, v)."""
    f = [c % p for c in coeffs]
    total = 1  # u = 1
    for deg in (1, 2):
        for low in itertools.product(range(p), repeat=deg):
            u = list(low) + [1]
            for v in itertools.product(range(p), repeat=deg):
                diff = _mul(list(v), list(v), p)
                diff = [(x - y) % p for x, y in itertools.zip_longest(diff, f, fillvalue=0)]
                if not any(_poly_mod(diff, u, p)):
                    total += 1
    return total


def _ext(p, n):
    """F_p^2 as pairs (a, b) = a + b s with s^2 = n."""
    def mul(x, y):
        return ((x[0] * y[0] + n * x[1] * y[1]) % p, (x[0] * y[1] + x[1] * y[0]) % p)

    return [(a, b) for a in range(p) for b in range(p)], mul


def brute_counts(coeffs, p):
    """N1, N2 by enumerating (x, y) pairs; F_p^2 built from the largest non-residue."""
    chi = {x * x % p for x in range(1, p)}
    n = max(v for v in range(1, p) if v not in chi)
    elems, mul = _ext(p, n)

    def f(x):
        acc = (0, 0)
        for c in reversed(coeffs):
            acc = mul(acc, x)
            acc = ((acc[0] + c) % p, acc[1])
        return acc

    squares = {}
    for y in elems:
        squares.setdefault(mul(y, y), 0)
        squares[mul(y, y)] += 1
    n1 = sum(sum(1 for y in range(p) if (y * y - f((x, 0))[0]) % p == 0) for x in range(p))
    n2 = sum(squares.get(f(x), 0) for x in elems)
    deg = len(coeffs) - 1
    lead = coeffs[-1] % p
    if deg == 5:
        return n1 + 1, n2 + 1
    return n1 + (2 if lead in chi else 0), n2 + 2


@pytest.mark.parametrize("seed", range(6))
def test_quintic_jacobian_matches_mumford_enumeration(seed):
    rng = random.Random(seed)
    p = rng.choice([3, 5, 7])
    ctx = PrimeField(p)
    coeffs = random_genus_two(ctx, rng, degree=5)
    assert jacobian_order(coeffs, ctx).jac_order == mumford_count(coeffs, p)


@pytest.mark.parametrize("seed", range(10))
def test_point_counts_match_enumeration(seed):
    rng = random.Random(100 + seed)
    p = rng.choice([5, 7, 11])
    ctx = PrimeField(p)
    coeffs = random_genus_two(ctx, rng)
    report = jacobian_order(coeffs, ctx)
    assert (report.N1, report.N2) == brute_counts(coeffs, p)


def test_jacobian_example():
    report = jacobian_order([0, -1, 0, 0, 0, 1], PrimeField(7))
    assert report.jac_order == mumford_count([0, -1, 0, 0, 0, 1], 7)
    assert report.in_weil_interval
    lo, hi = report.weil_interval
    assert 7.3 < lo < 7.4 and 176.6 < hi < 176.8


def test_jacobian_rejects_bad_curves():
    with pytest.raises(NotSquarefree):
        jacobian_order([0, 0, 1, 0, 0, 1], PrimeField(7))
    with pytest.raises(ValueError):
        jacobian_order([1, 0, 1], PrimeField(7))


@given(st.sampled_from([5, 7, 11, 13]), st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_weil_bounds_and_parity(p, seed):
    ctx = PrimeField(p)
    report = jacobian_order(random_genus_two(ctx, random.Random(seed)), ctx)
    assert (report.N1**2 + report.N2) % 2 == 0
    assert report.in_weil_interval


# --------------------------------------------------------------------------
# Counting relations
# --------------------------------------------------------------------------

def test_relation_report_shape():
    report = count_relation_check((2, 3, 6), PrimeField(11))
    assert report.status == "ok"
    assert set(report.s_prime) == {"Y_17", "S_PRIME_17"}
    assert report.nu_mod_p == 10
    if not report.nu_residue:
        assert report.relation2 == {}


def test_relation_bad_reduction_recorded():
    report = count_relation_check((2, 3, 6), PrimeField(5))
    assert report.status == "bad_reduction"


def test_relation_needs_rational_branch():
    with pytest.raises(ValueError):
        count_relation_check((2, 3, 7), PrimeField(11))


def test_relation_summary_keys():
    reports = [count_relation_check((2, 3, 6), PrimeField(p)) for p in (7, 11, 13)]
    summary = relation_summary(reports)
    assert summary["primes"] == [7, 11, 13]
    assert set(summary["relation1_designations"]) <= {"Y_17", "S_PRIME_17"}


def test_pure_fallback_selected_by_environment():
    import os
    import subprocess
    import sys

    env = dict(os.environ, KUMMER_SANDWICH_PURE="1")
    out = subprocess.run([sys.executable, "-c", "from kummer_sandwich import kernels; print(kernels.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "pure"
