from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from _oracles import brute_twisted_count, curve_trace, points_mod_p
from gl3atlas.arith import primes_up_to
from gl3atlas.arith.finite_field import irreducibles
from gl3atlas.arith.numbers import prime_divisors
from gl3atlas.counting import (
    BadPrime,
    SurfaceParams,
    VerifyFailed,
    WorkBudgetExceeded,
    boundary_traces,
    count_table,
    ec_ap,
    frobenius_fit,
    load_curves,
    power_sums,
    surface_char_sum,
    twisted_count,
)
from gl3atlas.counting.curves import BadPrime as CurveBadPrime
from gl3atlas.fixtures import shipped_curves_path, shipped_fixtures

SURFACES = [Fraction(2), Fraction(1), Fraction(1, 16)]


@pytest.mark.parametrize("a", SURFACES)
@pytest.mark.parametrize("p", [3, 5])
@pytest.mark.parametrize("r", [1, 2])
def test_twisted_count_matches_brute_force(a, p, r):
    s = SurfaceParams(a)
    for k in range(4):
        assert twisted_count(s, p, r, k).count == brute_twisted_count(a, p, r, k)


@pytest.mark.parametrize("a", SURFACES + [Fraction(3, 7)])
@pytest.mark.parametrize("p", [3, 5, 11])
def test_char_sum_against_affine_count(a, p):
    if Fraction(a).denominator % p == 0:
        return
    total = surface_char_sum(SurfaceParams(a), p)
    affine = brute_twisted_count(a, p, 1, 0)
    assert total == affine - p * p
    assert total % 2 == (affine - p * p) % 2


@pytest.mark.parametrize("p,r", [(3, 1), (3, 2), (5, 1), (5, 2)])
def test_counts_independent_of_modulus(p, r):
    s = SurfaceParams(2)
    for k in range(4):
        deg = r if k == 0 else 2 * r
        alt = list(irreducibles(p, deg))[-1]
        assert twisted_count(s, p, r, k, modulus=alt).count == twisted_count(s, p, r, k).count


def test_excluded_primes():
    with pytest.raises(BadPrime):
        twisted_count(SurfaceParams(2), 2, 1, 0)
    with pytest.raises(BadPrime):
        twisted_count(SurfaceParams(Fraction(1, 16)), 2, 1, 0)
    with pytest.raises(BadPrime):
        SurfaceParams(Fraction(1, 3)).a_mod(3)
    with pytest.raises(BadPrime):
        boundary_traces(SurfaceParams(1), 5, 2)  # 1 + 4 = 0 mod 5
    with pytest.raises(WorkBudgetExceeded):
        twisted_count(SurfaceParams(2), 101, 2, 0)
    with pytest.raises(ValueError):
        twisted_count(SurfaceParams(2), 3, 1, 4)


@pytest.mark.parametrize("a", [1, 2, 3, -5])
@pytest.mark.parametrize("p", [3, 7, 11, 13])
def test_boundary_traces_match_point_counts(a, p):
    s = SurfaceParams(a)
    if (a * a + 4) % p == 0:
        return
    # w^2 = v^3 + a v^2 - v
    expected = [curve_trace((0, a, 0, -1, 0), p, r) for r in (1, 2)]
    assert boundary_traces(s, p, 2) == expected
    t = boundary_traces(s, p, 4)
    assert all(abs(x) <= 2 * p ** (r / 2) for r, x in enumerate(t, 1))


def test_curve_config_is_consistent():
    curves = load_curves(shipped_curves_path())
    assert {c.conductor for c in curves} >= {35, 49}
    for c in curves:
        assert set(prime_divisors(abs(c.discriminant))) == set(prime_divisors(c.conductor))


@pytest.mark.parametrize("curve", load_curves(shipped_curves_path()), ids=lambda c: c.label)
def test_ec_ap_hasse_and_brute_force(curve):
    for p in primes_up_to(199):
        if curve.conductor % p == 0:
            with pytest.raises(CurveBadPrime):
                ec_ap(curve, p)
            continue
        a = ec_ap(curve, p)
        assert a * a <= 4 * p
        if p <= 60:
            assert a == points_mod_p(curve.coeffs, p)


def test_ec_ap_known_values():
    c35, c49 = load_curves(shipped_curves_path())[:2]
    assert [ec_ap(c35, p) for p in (2, 3, 11, 13)] == [0, 1, -3, 5]
    assert [ec_ap(c49, p) for p in (2, 3, 5, 11)] == [1, 0, 0, 4]


@given(st.integers(-30, 30), st.integers(-30, 30), st.sampled_from([3, 5, 7, 11, 13]))
def test_power_sums_are_root_power_sums(x, y, p):
    taus = power_sums(np.array([x]), np.array([y]), p, 4)
    a = complex(x, y)
    roots = np.roots([1, -a, p * a.conjugate(), -(p**3)])
    for r, (tr, ti) in enumerate(taus, 1):
        ref = (roots**r).sum()
        assert abs(complex(tr[0], ti[0]) - ref) <= 1e-6 * max(1, abs(ref))


@pytest.mark.parametrize("level,a", [(128, 2), (160, 1), (205, Fraction(1, 16))])
@pytest.mark.parametrize("p", [3, 7])
def test_fit_recovers_fixture(level, a, p):
    F = shipped_fixtures(level)
    s = SurfaceParams(a)
    counts = count_table(s, p, 3)
    got = frobenius_fit(s, p, "extract", counts=counts)
    assert F.value(p) in got
    assert got.unique
    assert all(x * x + y * y <= 9 * p * p for x, y in got.candidates)
    ok = frobenius_fit(s, p, "verify", hypothesis=F.value(p), counts=counts)
    assert ok.candidates == [tuple(F.value(p))]
    re, im = F.value(p)
    with pytest.raises(VerifyFailed):
        frobenius_fit(s, p, "verify", hypothesis=(re, im + 2), counts=counts)


def test_fit_conjugate_pairs_use_opposite_directions():
    s = SurfaceParams(2)
    got = frobenius_fit(s, 5, "extract", counts=count_table(s, 5, 3))
    (x, y), (x2, y2) = got.candidates
    assert (x, y) == (x2, -y2)
    assert got.directions((x, y)) == {-d for d in got.directions((x2, y2))}


def test_fit_rejects_incomplete_counts():
    s = SurfaceParams(2)
    counts = count_table(s, 3, 1)
    del counts[(3, 1)]
    with pytest.raises(ValueError):
        frobenius_fit(s, 3, "extract", counts=counts)
    with pytest.raises(ValueError):
        frobenius_fit(s, 3, "verify", counts=count_table(s, 3, 1))
