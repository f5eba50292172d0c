"""The finite projective plane P^2(Z/N) as the coset space SL(3,Z)/Gamma_0(N).

Points are stored by their canonical representative: the lexicographically
smallest triple among all unit multiples.  :class:`P2` enumerates the points in
lexicographic order and offers scalar and vectorized index lookup.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import NamedTuple, Sequence

import numpy as np

Matrix3 = tuple[tuple[int, int, int], tuple[int, int, int], tuple[int, int, int]]

# dense raw-triple lookup is used while N^3 stays below this many entries
_DENSE_LOOKUP_LIMIT = 40_000_000


class NotPrimitive(ValueError):
    """gcd(x, y, z, N) != 1, so the triple is not a point of P^2(Z/N)."""


class BadAction(ValueError):
    """The matrix determinant is not a unit mod N."""


class ProjPoint(NamedTuple):
    n: int
    x: int
    y: int
    z: int

    @property
    def coords(self) -> tuple[int, int, int]:
        return (self.x, self.y, self.z)


@lru_cache(maxsize=None)
def units_mod(n: int) -> tuple[int, ...]:
    if n == 1:
        return (0,)
    return tuple(u for u in range(1, n) if gcd(u, n) == 1)


def is_primitive(v: Sequence[int], n: int) -> bool:
    return gcd(gcd(gcd(int(v[0]), int(v[1])), int(v[2])), n) == 1


def normalize(v: Sequence[int], n: int) -> ProjPoint:
    """Canonical representative of the class of v in P^2(Z/n)."""
    if n < 1:
        raise ValueError("level must be positive")
    x, y, z = (int(c) % n for c in v)
    if n == 1:
        return ProjPoint(1, 0, 0, 0)
    if not is_primitive((x, y, z), n):
        raise NotPrimitive(f"({x}, {y}, {z}) is not primitive mod {n}")
    best = min(((u * x) % n, (u * y) % n, (u * z) % n) for u in units_mod(n))
    return ProjPoint(n, *best)


def _orbit_minima(values: range, n: int, group: Sequence[int]) -> list[int]:
    return [v for v in values if all((u * v) % n >= v for u in group)]


def _canonical_points(n: int) -> np.ndarray:
    if n == 1:
        return np.zeros((1, 3), dtype=np.int64)
    units = units_mod(n)
    pts = []
    for x in _orbit_minima(range(n), n, units):
        sx = [u for u in units if (u * x) % n == x]
        for y in _orbit_minima(range(n), n, sx):
            sxy = [u for u in sx if (u * y) % n == y]
            gxy = gcd(gcd(x, y), n)
            for z in _orbit_minima(range(n), n, sxy):
                if gcd(gxy, z) == 1:
                    pts.append((x, y, z))
    pts.sort()
    return np.array(pts, dtype=np.int64).reshape(-1, 3)


class P2:
    """Indexed list of all points of P^2(Z/N), sorted lexicographically."""

    def __init__(self, n: int):
        if n < 1:
            raise ValueError("level must be positive")
        self.n = n
        self.points = _canonical_points(n)
        self.points.setflags(write=False)
        self.keys = self._key(self.points)
        self.units = np.array(units_mod(n), dtype=np.int64)
        self._lookup = self._dense_lookup() if n**3 <= _DENSE_LOOKUP_LIMIT else None

    def _key(self, v: np.ndarray) -> np.ndarray:
        n = self.n
        return (v[..., 0] * n + v[..., 1]) * n + v[..., 2]

    def _dense_lookup(self) -> np.ndarray:
        n = self.n
        table = np.full(n**3, -1, dtype=np.int32)
        idx = np.arange(len(self.points), dtype=np.int32)
        for u in self.units:
            table[self._key((self.points * u) % n)] = idx
        return table

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        for i in range(len(self)):
            yield self.point(i)

    def point(self, i: int) -> ProjPoint:
        x, y, z = self.points[i]
        return ProjPoint(self.n, int(x), int(y), int(z))

    def index(self, v: Sequence[int]) -> int:
        """Index of the class of the integer triple v."""
        n = self.n
        if n == 1:
            return 0
        x, y, z = int(v[0]) % n, int(v[1]) % n, int(v[2]) % n
        if self._lookup is not None:
            i = int(self._lookup[(x * n + y) * n + z])
            if i < 0:
                raise NotPrimitive(f"({x}, {y}, {z}) is not primitive mod {n}")
            return i
        p = normalize((x, y, z), n)
        return int(np.searchsorted(self.keys, (p.x * n + p.y) * n + p.z))

    def indices(self, vs: np.ndarray, allow_nonprimitive: bool = False) -> np.ndarray:
        """Vectorized index lookup for an (m, 3) integer array; -1 marks non-primitive rows
        when `allow_nonprimitive` is set, otherwise NotPrimitive is raised."""
        n = self.n
        vs = np.asarray(vs, dtype=np.int64) % n
        if n == 1:
            return np.zeros(len(vs), dtype=np.int64)
        if self._lookup is not None:
            out = self._lookup[self._key(vs)].astype(np.int64)
        else:
            out = np.empty(len(vs), dtype=np.int64)
            for start in range(0, len(vs), 4096):
                chunk = vs[start : start + 4096]
                prim = np.gcd(np.gcd(np.gcd(chunk[:, 0], chunk[:, 1]), chunk[:, 2]), n) == 1
                scaled = (self.units[None, :, None] * chunk[:, None, :]) % n
                k = self._key(scaled).min(axis=1)
                pos = np.searchsorted(self.keys, k)
                pos = np.minimum(pos, len(self.keys) - 1)
                ok = prim & (self.keys[pos] == k)
                out[start : start + 4096] = np.where(ok, pos, -1)
        if not allow_nonprimitive and (out < 0).any():
            bad = vs[np.flatnonzero(out < 0)[0]]
            raise NotPrimitive(f"{tuple(int(c) for c in bad)} is not primitive mod {n}")
        return out

    def act_all(self, g: Sequence[Sequence[int]]) -> np.ndarray:
        """Index permutation i -> index(g . point_i) for a matrix with unit determinant mod N."""
        g = np.asarray(g, dtype=np.int64)
        _check_det(g, self.n)
        return self.indices(self.points @ g.T)


@lru_cache(maxsize=8)
def enumerate_points(n: int) -> P2:
    return P2(n)


def count_points(n: int) -> int:
    """N^2 * prod_{p | N} (1 + 1/p + 1/p^2), computed in integers."""
    total = n * n
    m = n
    p = 2
    out = total
    while p * p <= m:
        if m % p == 0:
            out = out // (p * p) * (p * p + p + 1)
            while m % p == 0:
                m //= p
        p += 1
    if m > 1:
        out = out // (m * m) * (m * m + m + 1)
    return out


def _det3(g) -> int:
    return int(
        g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1])
        - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0])
        + g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0])
    )


def _check_det(g, n: int) -> None:
    d = _det3(g)
    if gcd(d, n) != 1:
        raise BadAction(f"determinant {d} is not a unit mod {n}")


def act(g: Sequence[Sequence[int]], pt: ProjPoint) -> ProjPoint:
    """Left action of an integer matrix on a point (column vector), then normalize."""
    n = pt.n
    _check_det(g, n)
    v = [sum(int(g[i][j]) * c for j, c in enumerate(pt.coords)) for i in range(3)]
    return normalize(v, n)


def _primitive_integer_lift(x: int, y: int, z: int, n: int) -> tuple[int, int, int]:
    if x == 0 and y == 0:
        y = n  # (0, N, z) keeps the class and makes gcd(x, y) nonzero
    g = gcd(x, y)
    k = 0
    while gcd(g, z + k * n) != 1:
        k += 1
    return x, y, z + k * n


def complete_to_sl3(v: Sequence[int]) -> Matrix3:
    """An SL(3,Z) matrix whose first column is the primitive integer vector v."""
    v = [int(c) for c in v]
    if gcd(gcd(v[0], v[1]), v[2]) != 1:
        raise NotPrimitive(f"{tuple(v)} is not primitive over Z")
    G = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    # row operation v_i += c * v_j; keep G * v_current == v_original
    def add(i: int, j: int, c: int) -> None:
        v[i] += c * v[j]
        for r in range(3):
            G[r][j] -= c * G[r][i]

    while True:
        nz = [i for i in range(3) if v[i]]
        if len(nz) == 1:
            break
        piv = min(nz, key=lambda t: abs(v[t]))
        for j in nz:
            if j != piv:
                add(j, piv, -(v[j] // v[piv]))
    i = next(t for t in range(3) if v[t])
    if i != 0:
        # right-multiply by the 3-cycle sending e1 to e_i
        G = [[row[(j + i) % 3] for j in range(3)] for row in G]
        v = [v[i], 0, 0]
    if v[0] == -1:
        for r in range(3):
            G[r][0] = -G[r][0]
            G[r][1] = -G[r][1]
        v[0] = 1
    assert v == [1, 0, 0] and _det3(G) == 1
    return tuple(tuple(row) for row in G)  # type: ignore[return-value]


def lift_to_sl3(pt: ProjPoint) -> Matrix3:
    """h in SL(3,Z) with first column congruent to the stored representative of pt."""
    if pt.n == 1:
        return ((1, 0, 0), (0, 1, 0), (0, 0, 1))
    return complete_to_sl3(_primitive_integer_lift(pt.x, pt.y, pt.z, pt.n))
