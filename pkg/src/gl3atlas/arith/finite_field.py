"""Finite fields F_{p^r} in a power basis, with scalar elements and vectorized tables.

Scalar :class:`FqElem` values are used for exact checks and small brute-force
searches.  :class:`FieldTables` packs every element into an integer index
``sum(c_i * p**i)`` and keeps discrete log/exp tables so that whole arrays of
elements can be multiplied, added and tested for squareness with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import isqrt
from typing import Iterator, Sequence

import numpy as np

from .numbers import is_prime, prime_divisors


class FieldConstructionError(ValueError):
    pass


# -- polynomial helpers over F_p (coefficient lists, low degree first) -------


def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _pmod(a: Sequence[int], f: Sequence[int], p: int) -> list[int]:
    a = [c % p for c in a]
    _trim(a)
    df = len(f) - 1
    inv = pow(f[-1], -1, p)
    while len(a) - 1 >= df:
        c = a[-1] * inv % p
        shift = len(a) - 1 - df
        for i, b in enumerate(f):
            a[shift + i] = (a[shift + i] - c * b) % p
        _trim(a)
    return a


def _pmul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _psub(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    return _trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def _pgcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _pmod(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _ppowmod(base: Sequence[int], e: int, f: Sequence[int], p: int) -> list[int]:
    out = [1]
    b = _pmod(base, f, p)
    while e:
        if e & 1:
            out = _pmod(_pmul(out, b, p), f, p)
        b = _pmod(_pmul(b, b, p), f, p)
        e >>= 1
    return out


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin-style test: gcd(X^(p^i) - X, f) = 1 for i <= deg/2 and f | X^(p^deg) - X."""
    f = _trim([c % p for c in f])
    n = len(f) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    x = [0, 1]
    h = x
    for i in range(1, n // 2 + 1):
        h = _ppowmod(h, p, f, p)
        if len(_pgcd(f, _psub(h, x, p), p)) > 1:
            return False
    h = x
    for _ in range(n):
        h = _ppowmod(h, p, f, p)
    return not _psub(h, x, p)


def irreducibles(p: int, r: int) -> Iterator[tuple[int, ...]]:
    """Monic irreducibles of degree r over F_p in lexicographic order.

    Candidates X^r + c_{r-1} X^{r-1} + ... + c_0 are ordered by the tuple
    (c_{r-1}, ..., c_0).  Each is returned low degree first, including the leading 1.
    """
    for n in range(p**r):
        # n = sum c_i p^i, so c_{r-1} is the most significant digit
        low_first = []
        m = n
        for _ in range(r):
            low_first.append(m % p)
            m //= p
        low_first.append(1)
        if is_irreducible(low_first, p):
            yield tuple(low_first)


@lru_cache(maxsize=None)
def smallest_irreducible(p: int, r: int) -> tuple[int, ...]:
    for f in irreducibles(p, r):
        return f
    raise FieldConstructionError(f"no irreducible polynomial of degree {r} over F_{p}")


# -- the field and its elements ----------------------------------------------


class FiniteField:
    """F_{p^r} = F_p[X]/(modulus)."""

    def __init__(self, p: int, r: int = 1, modulus: Sequence[int] | None = None):
        if not is_prime(p):
            raise FieldConstructionError(f"{p} is not prime")
        if r < 1:
            raise FieldConstructionError(f"extension degree must be positive, got {r}")
        if modulus is None:
            modulus = smallest_irreducible(p, r)
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != r + 1 or modulus[-1] != 1:
            raise FieldConstructionError("modulus must be monic of degree r")
        if not is_irreducible(modulus, p):
            raise FieldConstructionError(f"modulus {modulus} is reducible over F_{p}")
        self.p = p
        self.r = r
        self.modulus = modulus
        self.order = p**r

    def __repr__(self):
        return f"FiniteField({self.p}, {self.r}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.r, self.modulus) == (
            other.p,
            other.r,
            other.modulus,
        )

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    # element construction
    def __call__(self, value) -> "FqElem":
        if isinstance(value, FqElem):
            if value.field != self:
                raise ValueError("element belongs to a different field")
            return value
        if isinstance(value, int):
            return FqElem(self, (value % self.p,) + (0,) * (self.r - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.r:
            coeffs = _pmod(coeffs, self.modulus, self.p)
        coeffs += [0] * (self.r - len(coeffs))
        return FqElem(self, tuple(coeffs))

    def zero(self) -> "FqElem":
        return self(0)

    def one(self) -> "FqElem":
        return self(1)

    def gen(self) -> "FqElem":
        """The class of X."""
        return self([0, 1]) if self.r > 1 else self(-self.modulus[0])

    def from_index(self, idx: int) -> "FqElem":
        coeffs = []
        for _ in range(self.r):
            coeffs.append(idx % self.p)
            idx //= self.p
        return FqElem(self, tuple(coeffs))

    def elements(self) -> Iterator["FqElem"]:
        for i in range(self.order):
            yield self.from_index(i)

    @cached_property
    def primitive_element(self) -> "FqElem":
        qs = prime_divisors(self.order - 1)
        for i in range(1, self.order):
            g = self.from_index(i)
            if all(g ** ((self.order - 1) // q) != self.one() for q in qs):
                return g
        raise FieldConstructionError("no primitive element")  # unreachable

    def frobenius(self, x: "FqElem") -> "FqElem":
        return x**self.p

    def tables(self) -> "FieldTables":
        return _tables_for(self)


@dataclass(frozen=True, eq=False)
class FqElem:
    field: FiniteField
    coeffs: tuple[int, ...]

    @property
    def index(self) -> int:
        out = 0
        for c in reversed(self.coeffs):
            out = out * self.field.p + c
        return out

    def _other(self, o) -> "FqElem":
        if isinstance(o, FqElem):
            if o.field != self.field:
                raise ValueError("elements from different fields")
            return o
        if isinstance(o, int):
            return self.field(o)
        return NotImplemented

    def __add__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        p = self.field.p
        return FqElem(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FqElem(self.field, tuple((-a) % p for a in self.coeffs))

    def __sub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        f = self.field
        return f(_pmod(_pmul(list(self.coeffs), list(o.coeffs), f.p), f.modulus, f.p))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        f = self.field
        return f(_ppowmod(list(self.coeffs), e, f.modulus, f.p))

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a finite field")
        return self ** (self.field.order - 2)

    def __truediv__(self, o):
        o = self._other(o)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def frobenius(self) -> "FqElem":
        return self**self.field.p

    def __eq__(self, o):
        if isinstance(o, int):
            o = self.field(o)
        if not isinstance(o, FqElem):
            return NotImplemented
        return self.field == o.field and self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.modulus, self.coeffs))

    def __repr__(self):
        return f"FqElem({list(self.coeffs)} in F_{self.field.p}^{self.field.r})"


def finite_field(p: int, r: int = 1, modulus: Sequence[int] | None = None) -> FiniteField:
    return FiniteField(p, r, modulus)


# -- vectorized tables --------------------------------------------------------


class FieldTables:
    """Index-packed element arrays with log/exp tables for F_q, q = p^r.

    Elements are int64 indices ``sum(c_i p^i)``; 0 is the zero element and
    ``exp[j]`` is the index of ``g**j`` for the field's primitive element g.
    """

    def __init__(self, field: FiniteField):
        self.field = field
        self.p = field.p
        self.r = field.r
        self.q = field.order
        self.powers = np.array([self.p**i for i in range(self.r)], dtype=np.int64)
        self.exp, self.log = self._build()
        self.one = 1

    def _mult_matrix(self, a: FqElem) -> np.ndarray:
        f = self.field
        cols = []
        xj = f.one()
        x = f([0, 1]) if f.r > 1 else f.one()
        for _ in range(f.r):
            cols.append((a * xj).coeffs)
            xj = xj * x
        return np.array(cols, dtype=np.int64).T

    def _build(self):
        f = self.field
        q, p = self.q, self.p
        n = q - 1
        g = f.primitive_element
        block = max(1, isqrt(n) + 1)
        small = []
        x = f.one()
        for _ in range(block):
            small.append(x.coeffs)
            x = x * g
        small_arr = np.array(small, dtype=np.int64).T  # r x block
        step = self._mult_matrix(x)  # multiplication by g**block
        cur = np.eye(self.r, dtype=np.int64)
        exp = np.empty(n, dtype=np.int64)
        pos = 0
        while pos < n:
            vecs = (cur @ small_arr) % p  # r x block
            take = min(block, n - pos)
            exp[pos : pos + take] = self.powers @ vecs[:, :take]
            pos += take
            cur = (step @ cur) % p
        log = np.full(q, -1, dtype=np.int64)
        log[exp] = np.arange(n, dtype=np.int64)
        if (log[1:] < 0).any():
            raise FieldConstructionError("exp table does not cover the multiplicative group")
        return exp, log

    # digits <-> indices
    def digits(self, a: np.ndarray) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        return (a[..., None] // self.powers) % self.p

    def from_digits(self, d: np.ndarray) -> np.ndarray:
        return (d % self.p) @ self.powers

    def embed_int(self, c) -> np.ndarray:
        return np.asarray(c, dtype=np.int64) % self.p

    def index_of(self, x: FqElem) -> int:
        return x.index

    # arithmetic on index arrays
    def add(self, a, b):
        return self.from_digits(self.digits(a) + self.digits(b))

    def sub(self, a, b):
        return self.from_digits(self.digits(a) - self.digits(b))

    def neg(self, a):
        return self.from_digits(-self.digits(a))

    def add_int(self, a, c: int):
        """a + c for c in F_p: only the constant digit changes."""
        a = np.asarray(a, dtype=np.int64)
        d0 = a % self.p
        return a - d0 + (d0 + c) % self.p

    def mul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        zero = (a == 0) | (b == 0)
        s = (self.log[a] + self.log[b]) % (self.q - 1)
        out = self.exp[s]
        return np.where(zero, 0, out)

    def power(self, a, e: int):
        a = np.asarray(a, dtype=np.int64)
        zero = a == 0
        s = (self.log[a] * (e % (self.q - 1))) % (self.q - 1)
        out = self.exp[s]
        if e == 0:
            return np.ones_like(a)
        return np.where(zero, 0, out)

    def frobenius(self, a, times: int = 1):
        return self.power(a, self.p**times)

    def all_elements(self) -> np.ndarray:
        return np.arange(self.q, dtype=np.int64)

    def subfield_elements(self, s: int) -> np.ndarray:
        """Indices of F_{p^s} inside this field (s must divide r)."""
        if self.r % s:
            raise ValueError(f"F_{self.p}^{s} is not a subfield of F_{self.p}^{self.r}")
        step = (self.q - 1) // (self.p**s - 1)
        return np.concatenate([[0], self.exp[::step]])

    def in_subfield(self, a, s: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        step = (self.q - 1) // (self.p**s - 1)
        return (a == 0) | (self.log[a] % step == 0)

    def quadratic_character(self, a) -> np.ndarray:
        """Quadratic character of F_q on an index array (0 on zero)."""
        a = np.asarray(a, dtype=np.int64)
        out = np.where(self.log[a] % 2 == 0, 1, -1)
        return np.where(a == 0, 0, out).astype(np.int64)

    def subfield_quadratic_character(self, a, s: int) -> np.ndarray:
        """Quadratic character of the subfield F_{p^s} on values lying in it."""
        a = np.asarray(a, dtype=np.int64)
        step = (self.q - 1) // (self.p**s - 1)
        lg = self.log[a]
        out = np.where((lg // step) % 2 == 0, 1, -1)
        return np.where(a == 0, 0, out).astype(np.int64)


_TABLE_CACHE: dict[FiniteField, FieldTables] = {}


def _tables_for(field: FiniteField) -> FieldTables:
    t = _TABLE_CACHE.get(field)
    if t is None:
        if len(_TABLE_CACHE) > 8:
            _TABLE_CACHE.clear()
        t = FieldTables(field)
        _TABLE_CACHE[field] = t
    return t
