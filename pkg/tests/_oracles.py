"""Slow, independent reference implementations used only by the tests."""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd

import numpy as np
from flint import fmpz_mat

from gl3atlas.arith.finite_field import FiniteField


# -- projective plane mod N --


def brute_points(n: int) -> set[tuple[int, int, int]]:
    """Classes of primitive triples mod n, each as the set-minimum of its unit multiples."""
    if n == 1:
        return {(0, 0, 0)}
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    out = set()
    for v in product(range(n), repeat=3):
        if gcd(gcd(gcd(*v[:2]), v[2]), n) != 1:
            continue
        out.add(min(tuple(u * c % n for c in v) for u in units))
    return out


def _canon(v, n, units):
    return min(tuple(u * c % n for c in v) for u in units)


# -- homology: dense exact nullity without any orbit reduction --


def dense_nullity(n: int, third_slot: str = "z") -> int:
    """Nullity of the full relation matrix, built from the formulas directly."""
    if n == 1:
        # the single point is sent to itself by A, so f = -f
        return 0
    units = [u for u in range(1, n) if gcd(u, n) == 1]
    pts = sorted(brute_points(n))
    index = {p: i for i, p in enumerate(pts)}

    def col(v):
        v = tuple(c % n for c in v)
        if gcd(gcd(gcd(*v[:2]), v[2]), n) != 1:
            return None
        return index[_canon(v, n, units)]

    rows = []
    for x, y, z in pts:
        terms = [
            [(col((x, y, z)), 1), (col((-y, x, z)), 1)],
            [(col((x, y, z)), 1), (col((z, x, y)), -1)],
            [(col((x, y, z)), 1), (col((-y, x - y, z)), 1),
             (col((y - x, -x, z if third_slot == "z" else y)), 1)],
        ]
        for t in terms:
            row = [0] * len(pts)
            for c, v in t:
                if c is not None:
                    row[c] += v
            rows.append(row)
    return len(pts) - fmpz_mat(rows).rank()


def signed_orbits(n: int) -> dict[tuple[int, int, int], tuple[int, int] | None]:
    """Signed union-find over relations 1 and 2: point -> (root id, sign), or None
    when the point is forced to zero (identified with its own negative)."""
    units = [u for u in range(1, n) if gcd(u, n) == 1] or [1]
    pts = sorted(brute_points(n))
    parent = {p: p for p in pts}
    sign = {p: 1 for p in pts}
    zero = set()

    def find(p):
        s = 1
        while parent[p] != p:
            s *= sign[p]
            p = parent[p]
        return p, s

    def union(a, b, s):  # f(a) = s f(b)
        ra, sa = find(a)
        rb, sb = find(b)
        if ra == rb:
            if sa != s * sb:
                zero.add(ra)
            return
        parent[ra] = rb
        sign[ra] = sa * s * sb
        if ra in zero:
            zero.add(rb)

    for x, y, z in pts:
        union((x, y, z), _canon((-y, x, z), n, units), -1)
        union((x, y, z), _canon((z, x, y), n, units), 1)
    out = {}
    for p in pts:
        r, s = find(p)
        out[p] = None if r in zero else (r, s)
    return out


# -- linear algebra --


def berkowitz_charpoly(M) -> list[Fraction]:
    """Characteristic polynomial det(X - M), coefficients from the constant term up."""
    n = len(M)
    M = [[Fraction(v) for v in row] for row in M]
    vect = [Fraction(1)]
    for r in range(n):
        # leading principal (r+1)x(r+1) block
        R = M[r][:r]
        C = [M[i][r] for i in range(r)]
        A = [row[:r] for row in M[:r]]
        a = M[r][r]
        col = [Fraction(1), -a]
        powv = C
        for _ in range(r):
            col.append(-sum(x * y for x, y in zip(R, powv)))
            powv = [sum(A[i][j] * powv[j] for j in range(r)) for i in range(r)]
        # Toeplitz (lower triangular) product with the previous vector
        new = []
        for i in range(r + 2):
            new.append(sum(col[i - j] * vect[j] for j in range(len(vect)) if 0 <= i - j < len(col)))
        vect = new
    return list(reversed(vect))


# -- point counts --


def brute_twisted_count(a: Fraction, p: int, r: int, k: int) -> int:
    """Points (x, y, t) of t^2 = g_a(x, y) with phi^k(Frob_q(P)) = P, found by scanning
    all of F_(q^4) for x and testing the fixed-point equations directly."""
    a = Fraction(a)
    q = p**r
    T = FiniteField(p, 4 * r).tables()
    X = T.all_elements()
    fx = T.power(X, q)
    A = a.numerator * pow(a.denominator, -1, p) % p
    in_fq = X[fx == X]
    sq = T.mul(in_fq, in_fq)
    roots = np.bincount(sq, minlength=T.q)  # number of t in F_q with t^2 = v

    def g(x, y):
        xx, yy = T.mul(x, x), T.mul(y, y)
        f1 = T.mul(x, y)
        f2 = T.mul(T.sub(xx, 1), T.sub(yy, 1))
        f3 = T.add(T.sub(xx, yy), T.mul(T.mul(np.full_like(x, A), x), y))
        return T.mul(T.mul(f1, f2), f3)

    if k in (0, 2):
        base = X[fx == X] if k == 0 else X[fx == T.neg(X)]
        x = np.repeat(base, len(base))
        y = np.tile(base, len(base))
    else:
        # k = 1: Frob(y) = x, -Frob(x) = y;  k = 3: -Frob(y) = x, Frob(x) = y
        y_all = T.neg(fx) if k == 1 else fx
        fy = T.power(y_all, q)
        ok = (fy == X) if k == 1 else (T.neg(fy) == X)
        x, y = X[ok], y_all[ok]
    vals = g(x, y)
    return int(roots[vals].sum())


def curve_trace(coeffs, p: int, r: int = 1) -> int:
    """q + 1 - #E(F_q) for a Weierstrass curve, by enumerating F_q^2 (q = p^r)."""
    a1, a2, a3, a4, a6 = coeffs
    T = FiniteField(p, r).tables()
    X = T.all_elements()
    x = np.repeat(X, len(X))
    y = np.tile(X, len(X))
    c = T.embed_int

    def lin(v, coef):
        return T.mul(np.full_like(v, c(coef % p)), v)

    lhs = T.add(T.add(T.mul(y, y), lin(T.mul(x, y), a1)), lin(y, a3))
    x2 = T.mul(x, x)
    rhs = T.add(T.add(T.add(T.mul(x2, x), lin(x2, a2)), lin(x, a4)), np.full_like(x, c(a6 % p)))
    affine = int((lhs == rhs).sum())
    return T.q + 1 - (affine + 1)


def points_mod_p(coeffs, p: int) -> int:
    """Same as curve_trace with r = 1, written with plain integers."""
    a1, a2, a3, a4, a6 = coeffs
    n = sum(1 for x in range(p) for y in range(p)
            if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0)
    return p + 1 - (n + 1)
