"""Point counts on the double cover t^2 = g_a(x, y) twisted by the order-4 map phi.

    g_a(x, y) = x y (x^2 - 1)(y^2 - 1)(x^2 - y^2 + a x y),   phi(x, y, t) = (y, -x, t)

All sums use the factorisation

    g_a(x, y) = x y (x - 1)(x + 1)(y - 1)(y + 1) y^2 h(x / y),   h(u) = u (u + a) - 1,

so every value needs only multiplications and additions of F_p constants,
which the log/exp tables do cheaply.  The quadratic character of g is read
off the sum of discrete logs.

Fixed loci of phi^k o Frob_q (q = p^r):

* k = 0: x, y in F_q.
* k = 2: x^q = -x and y^q = -y; with s^2 = mu a non-square of F_q, x = c1 s and
  y = c2 s for c1, c2 in F_q.
* k = 1: x^(q^2) = -x and y = -x^q; with w^2 = nu a non-square of F_(q^2),
  x = c w, y = c' w with c' = -c^q nu^((q-1)/2) and c in F_(q^2).
* k = 3: as k = 1 with y = x^q, i.e. c' = +c^q nu^((q-1)/2).

Every locus has q^2 points (x, y); each contributes 1 + chi(g) values of t.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from ..arith.finite_field import FieldTables, FiniteField
from ..arith.numbers import is_prime

DEFAULT_BUDGET = 5_000_000  # max q^2 per count
_BLOCK = 1 << 19


class BadPrime(ValueError):
    pass


class WorkBudgetExceeded(RuntimeError):
    pass


class NonRationalValue(AssertionError):
    """g_a landed outside F_q on a twisted locus (implementation bug)."""


@dataclass(frozen=True)
class SurfaceParams:
    a: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a", Fraction(self.a))

    def a_mod(self, p: int) -> int:
        if self.a.denominator % p == 0:
            raise BadPrime(f"{p} divides the denominator of a = {self.a}")
        return self.a.numerator * pow(self.a.denominator, -1, p) % p


@dataclass(frozen=True)
class CountRecord:
    a: Fraction
    p: int
    r: int
    k: int
    count: int


def _check(s: SurfaceParams, p: int, r: int, budget: int) -> int:
    if not is_prime(p) or p == 2:
        raise BadPrime(f"{p} is not an odd prime")
    a = s.a_mod(p)
    if (p**r) ** 2 > budget:
        raise WorkBudgetExceeded(f"q^2 = {(p**r) ** 2} exceeds the work budget {budget}")
    return a


@lru_cache(maxsize=16)
def _tables(p: int, r: int, modulus: tuple[int, ...] | None = None) -> FieldTables:
    return FiniteField(p, r, modulus).tables()


class _LogField:
    """Log-domain helpers over a FieldTables; -1 encodes log(0)."""

    def __init__(self, T: FieldTables):
        self.T = T
        self.order = T.q - 1

    def log(self, idx: np.ndarray) -> np.ndarray:
        return self.T.log[idx]

    def elem(self, lg: np.ndarray) -> np.ndarray:
        return np.where(lg < 0, 0, self.T.exp[np.maximum(lg, 0) % self.order])

    def shift(self, lg: np.ndarray, c: int) -> np.ndarray:
        """log(x + c) for c in F_p, given log(x)."""
        return self.T.log[self.T.add_int(self.elem(lg), c)]


def _char_sum(F: _LogField, lx: np.ndarray, ly: np.ndarray, a: int, extra_log: np.ndarray | int,
              step: int) -> int:
    """Sum of chi_q over pairs whose g equals  x y (x^2-1)(y^2-1)(x^2-y^2+axy) * extra,
    given logs of x and y in the ambient field (extra is a log offset, e.g. for nu factors).

    ``step`` = (ambient order - 1)/(q - 1); values must be q-th power invariant.
    """
    zero = (lx < 0) | (ly < 0)
    o = F.order
    lxm, lxp = F.shift(lx, -1), F.shift(lx, 1)
    lym, lyp = F.shift(ly, -1), F.shift(ly, 1)
    lu = np.where(zero, 0, (lx - ly) % o)
    lu_a = F.shift(lu, a)
    prod = F.elem(np.where(lu_a < 0, -1, (lu + lu_a) % o))  # u (u + a)
    lh = F.log(F.T.add_int(prod, -1))
    parts = (lxm, lxp, lym, lyp, lh)
    for part in parts:
        zero = zero | (part < 0)
    total = lx + 3 * ly + lxm + lxp + lym + lyp + lh + extra_log
    total = np.where(zero, 0, total % o)
    live = ~zero
    if (total[live] % step).any():
        raise NonRationalValue("g_a is not in F_q on the fixed locus")
    chi = np.where((total // step) % 2 == 0, 1, -1)
    return int(chi[live].sum())


def _pair_sum(F: _LogField, xs: np.ndarray, ys: np.ndarray, a: int, step: int) -> int:
    lxs, lys = F.log(xs), F.log(ys)
    out = 0
    rows = max(1, _BLOCK // max(1, len(ys)))
    for i in range(0, len(xs), rows):
        lx = np.repeat(lxs[i : i + rows], len(ys))
        ly = np.tile(lys, min(rows, len(xs) - i))
        out += _char_sum(F, lx, ly, a, 0, step)
    return out


def surface_char_sum(s: SurfaceParams, p: int, r: int = 1, budget: int = DEFAULT_BUDGET,
                     modulus: tuple[int, ...] | None = None) -> int:
    """Sum over x, y in F_q of chi_q(g_a(x, y)), q = p^r."""
    a = _check(s, p, r, budget)
    T = _tables(p, r, modulus)
    els = T.all_elements()
    return _pair_sum(_LogField(T), els, els, a, 1)


def _twisted_char_sum(a: int, p: int, r: int, k: int, modulus) -> int:
    q = p**r
    if k == 0:
        T = _tables(p, r, modulus)
        els = T.all_elements()
        return _pair_sum(_LogField(T), els, els, a, 1)
    T2 = _tables(p, 2 * r, modulus)
    F = _LogField(T2)
    Q = q * q
    step = (Q - 1) // (q - 1)
    if k == 2:
        # solutions of X^q = -X in F_(q^2): zero and elements whose log is (q+1)/2 mod q+1 times odd
        lg = np.arange(Q - 1, dtype=np.int64)
        sol = lg[(lg * (q - 1)) % (Q - 1) == (Q - 1) // 2]
        locus = np.concatenate([[0], T2.exp[sol]])
        return _pair_sum(F, locus, locus, a, step)
    # k = 1, 3: x = c w, y = c' w, w^2 = nu with nu = primitive element (non-square)
    half = (Q - 1) // 2
    sign_log = half if k == 1 else 0  # log(-1) = (Q-1)/2
    out = 0
    for start in range(0, Q, _BLOCK):
        c = np.arange(start, min(Q, start + _BLOCK), dtype=np.int64)
        lc = T2.log[c]
        lc2 = np.where(lc < 0, -1, (q * lc + (q - 1) // 2 + sign_log) % (Q - 1))
        # in log terms x = c w and y = c' w with log w = 1/2: work with X = c^2 nu, Y = c'^2 nu
        out += _twisted_block(F, lc, lc2, a, step)
    return out


def _twisted_block(F: _LogField, lc: np.ndarray, lcp: np.ndarray, a: int, step: int) -> int:
    """Character sum for x = c w, y = c' w with w^2 = nu (log nu = 1)."""
    o = F.order
    zero = (lc < 0) | (lcp < 0)
    lX = np.where(zero, -1, (2 * lc + 1) % o)  # x^2 = c^2 nu
    lY = np.where(zero, -1, (2 * lcp + 1) % o)
    lXm, lYm = F.shift(lX, -1), F.shift(lY, -1)
    lu = np.where(zero, 0, (lc - lcp) % o)  # x / y = c / c'
    lu_a = F.shift(lu, a)
    prod = F.elem(np.where(lu_a < 0, -1, (lu + lu_a) % o))
    lh = F.log(F.T.add_int(prod, -1))
    for part in (lXm, lYm, lh):
        zero = zero | (part < 0)
    # g = (c c' nu) (x^2 - 1)(y^2 - 1) * nu c'^2 h(u)
    total = (lc + lcp + 1) + lXm + lYm + (1 + 2 * lcp) + lh
    total = np.where(zero, 0, total % o)
    live = ~zero
    if (total[live] % step).any():
        raise NonRationalValue("g_a is not in F_q on the fixed locus")
    chi = np.where((total // step) % 2 == 0, 1, -1)
    return int(chi[live].sum())


def twisted_count(s: SurfaceParams, p: int, r: int, k: int, budget: int = DEFAULT_BUDGET,
                  modulus: tuple[int, ...] | None = None) -> CountRecord:
    """Affine points of t^2 = g_a fixed by phi^k o Frob_q, q = p^r.

    ``modulus`` overrides the defining polynomial of the working field (degree r
    for k = 0, degree 2r otherwise); counts do not depend on it.
    """
    if k not in (0, 1, 2, 3):
        raise ValueError("k must be 0..3")
    a = _check(s, p, r, budget)
    q = p**r
    return CountRecord(s.a, p, r, k, q * q + _twisted_char_sum(a, p, r, k, modulus))


def count_table(s: SurfaceParams, p: int, rmax: int, budget: int = DEFAULT_BUDGET) -> dict[tuple[int, int], int]:
    """{(k, r): count} for k = 0..3 and r = 1..rmax."""
    return {(k, r): twisted_count(s, p, r, k, budget).count for r in range(1, rmax + 1) for k in range(4)}


def default_rmax(p: int) -> int:
    if p <= 13:
        return 3
    if p <= 37:
        return 2
    return 1
