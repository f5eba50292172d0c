import random
from fractions import Fraction

import pytest
from flint import fmpq, fmpq_mat, fmpz_mat
from hypothesis import given, settings, strategies as st

from _oracles import berkowitz_charpoly
from gl3atlas.arith import IntPolynomial
from gl3atlas.hecke import (
    AmbiguityError,
    BadPrime,
    ConventionError,
    charpoly,
    classify_pair,
    coset_reps,
    dp_relation,
    eigenvalue_check,
    hecke_matrix,
    reduce_symbol,
    restricted_operator,
    spectrum_fields,
    unimodular_leaves,
)
from gl3atlas.hecke.operators import cached_hecke_matrix
from gl3atlas.hecke.symbols import det3
from gl3atlas.homology import homology_basis

X = IntPolynomial.x()


def companion(coeffs):
    """Companion matrix of the monic polynomial with low-first ``coeffs``."""
    n = len(coeffs) - 1
    M = [[0] * n for _ in range(n)]
    for i in range(1, n):
        M[i][i - 1] = 1
    for i in range(n):
        M[i][n - 1] = -coeffs[i]
    return fmpz_mat(M)


def test_coset_counts():
    assert len(coset_reps(2, "E")) == 7
    assert len(coset_reps(3, "E")) == 13
    D = coset_reps(3, "D")
    assert len(D) == 13
    assert all(det3(b) == 9 for b in D)
    assert all(det3(b) == 3 for b in coset_reps(3, "E"))
    with pytest.raises(BadPrime):
        coset_reps(4, "E")


def test_reduce_symbol_example():
    pairs = reduce_symbol(((1, 0, 0), (0, 1, 0), (0, 0, 2)), 7).pairs()
    assert [(pt.coords, s) for pt, s, _ in pairs] == [((1, 0, 0), 1)]


def test_charpoly_examples():
    assert charpoly(fmpz_mat(2, 2)) == X**2
    f = X**2 - 2 * X + 5
    assert charpoly(companion(f.coeffs)) == f
    sp = spectrum_fields(companion(((X**2 - 2 * X + 5) * (X - 1)).coeffs))
    assert sp.census == {(2, 1): 1, (1, 1): 1}


def test_eigenvalue_check():
    cp = (X - 3) ** 3 * (X**2 + 1)
    assert eigenvalue_check(cp, X - 3) == 3
    assert eigenvalue_check(cp, X**2 + 1) == 1
    assert eigenvalue_check(cp, X - 1) == 0
    with pytest.raises(ValueError):
        eigenvalue_check(cp, IntPolynomial([1, 2]))


def test_level_11_e2():
    assert charpoly(cached_hecke_matrix(11, 2, "E")) == X**2 + X - 6


def test_bad_prime_rejected():
    with pytest.raises(BadPrime):
        hecke_matrix(11, 11, "E")


@pytest.mark.parametrize("n,p", [(11, 2), (20, 3), (24, 5), (30, 7), (17, 2)])
def test_charpoly_matches_berkowitz(n, p):
    H = cached_hecke_matrix(n, p, "E")
    assert H.dim <= 20
    M = [[Fraction(int(H.numerators[i, j]), H.denominator) for j in range(H.dim)] for i in range(H.dim)]
    assert [Fraction(c) for c in charpoly(H).coeffs] == berkowitz_charpoly(M)


@pytest.mark.parametrize("n", [11, 17, 20, 30])
def test_operators_commute(n):
    E2 = cached_hecke_matrix(n, 7, "E").rational()
    D2 = cached_hecke_matrix(n, 7, "D").rational()
    p = 3 if n % 3 else 11
    E3 = cached_hecke_matrix(n, p, "E").rational()
    assert E2 * E3 == E3 * E2
    assert E2 * D2 == D2 * E2


@pytest.mark.parametrize("n,p,kind", [(11, 2, "E"), (11, 3, "D"), (20, 3, "E"), (25, 2, "D")])
def test_image_lies_in_space(n, p, kind):
    # full_check evaluates T f_j at every orbit and raises if T f_j is not in H
    hecke_matrix(n, p, kind, full_check=True)


def test_other_conventions_fail_well_definedness_or_vanish():
    with pytest.raises(ConventionError):
        hecke_matrix(11, 2, "E", convention="first-column")
    H = hecke_matrix(11, 2, "E", convention="transposed")
    assert H.numerators == fmpz_mat(2, 2)


@settings(max_examples=25)
@given(st.integers(2, 35), st.integers(0, 10**6),
       st.lists(st.integers(-6, 6), min_size=9, max_size=9))
def test_reduction_independent_of_strategy(n, seed, entries):
    M = [entries[0:3], entries[3:6], entries[6:9]]
    if det3(M) == 0:
        return
    B = homology_basis(n)
    if not len(B):
        return
    a = reduce_symbol(M, n)
    b = reduce_symbol(M, n, rng=random.Random(seed))
    for f in B:
        assert a.pair_with(lambda k: f[k]) == b.pair_with(lambda k: f[k])


@settings(max_examples=40)
@given(st.lists(st.integers(-20, 20), min_size=9, max_size=9), st.integers(0, 1000))
def test_leaves_are_unimodular(entries, seed):
    M = [entries[0:3], entries[3:6], entries[6:9]]
    if det3(M) == 0:
        return
    for g in unimodular_leaves(M, random.Random(seed)):
        assert abs(det3(g)) == 1


def test_classify_pair():
    E = fmpq_mat([[0, -5], [1, 2]])  # charpoly X^2 - 2X + 5
    m = X**2 - 2 * X + 5
    conj = fmpq_mat([[2, 0], [0, 2]]) - E
    assert classify_pair(E, conj, m) == "conjugate"
    assert classify_pair(E, E, m) == "equal"
    assert classify_pair(E, fmpq_mat([[1, 0], [0, 1]]), m) == "other"


def test_restricted_operator_matches_full_matrix():
    n = 30
    H = cached_hecke_matrix(n, 7, "E").rational()
    B = homology_basis(n)
    vectors = [[1 if i == j else 0 for i in range(B.dimension)] for j in range(B.dimension)]
    Y = restricted_operator(n, 7, "E", [[fmpq(v) for v in col] for col in vectors])
    assert Y == H


def test_dp_relation_needs_two_dimensional_space():
    with pytest.raises(AmbiguityError):
        dp_relation(30, 7, X**2 + 1)
    with pytest.raises(ValueError):
        dp_relation(30, 7, X - 1)


def test_charpoly_of_rational_matrix():
    M = fmpq_mat([[fmpq(1, 2), 0], [0, fmpq(3, 2)]])
    with pytest.raises(ArithmeticError):
        charpoly(M)
    assert charpoly(fmpq_mat([[0, fmpq(-5, 2)], [2, 2]])) == X**2 - 2 * X + 5
