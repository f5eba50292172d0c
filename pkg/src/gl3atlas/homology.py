"""The space H of functions on P^2(Z/N) cut out by three linear relation families.

For a point q the relations read

    f(q) + f(A q) = 0          A: (x, y, z) -> (-y, x, z)
    f(q) - f(C q) = 0          C: (x, y, z) -> (z, x, y)
    f(q) + f(B q) + f(B^2 q) = 0   B: (x, y, z) -> (-y, x - y, z)

and H is isomorphic to the degree-3 rational homology of Gamma_0(N).  The
first two families generate a 24-element group of signed permutations, so the
solver first passes to orbits (with a sign character) and only then eliminates
the third family.  The kernel is computed modulo word-size primes and lifted by
rational reconstruction, followed by an exact check against every row.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterator, Sequence

import numpy as np
from flint import nmod_mat

from .arith.numbers import crt_pair, large_primes, rational_reconstruction
from .projspace import P2, enumerate_points

MAT_A = ((0, -1, 0), (1, 0, 0), (0, 0, 1))
MAT_C = ((0, 0, 1), (1, 0, 0), (0, 1, 0))
MAT_B = ((0, -1, 0), (1, -1, 0), (0, 0, 1))

VARIANTS = ("z", "y")


class LevelMismatch(ValueError):
    pass


class KernelError(ArithmeticError):
    """Multi-modular kernel reconstruction did not stabilise."""


def _apply(points: np.ndarray, m) -> np.ndarray:
    return points @ np.asarray(m, dtype=np.int64).T


@dataclass
class RelationSystem:
    """All relation rows for level N, one (columns, coefficients) family per relation.

    ``families[k]`` is a pair ``(cols, coeffs)`` with ``cols`` of shape
    (#points, width) and ``coeffs`` of length width.  Column -1 marks a term
    that was dropped because its argument is not a point (only possible in the
    "y" variant).
    """

    n: int
    space: P2
    variant: str
    families: list[tuple[np.ndarray, tuple[int, ...]]]
    dropped_terms: int = 0

    @property
    def npoints(self) -> int:
        return len(self.space)

    @property
    def raw_row_count(self) -> int:
        return sum(len(cols) for cols, _ in self.families)

    def rows(self) -> Iterator[dict[int, int]]:
        """Rows as merged {column: coefficient} dicts (zero coefficients removed)."""
        for cols, coeffs in self.families:
            for r in cols:
                d: dict[int, int] = {}
                for c, v in zip(r, coeffs):
                    if c >= 0:
                        d[int(c)] = d.get(int(c), 0) + v
                yield {c: v for c, v in d.items() if v}

    def residuals(self, values: np.ndarray) -> list[np.ndarray]:
        """Evaluate every row on a dense value vector (any numpy dtype, incl. object)."""
        out = []
        for cols, coeffs in self.families:
            acc = np.zeros(len(cols), dtype=values.dtype)
            for t, v in enumerate(coeffs):
                c = cols[:, t]
                term = values[np.maximum(c, 0)] * v
                acc = acc + np.where(c >= 0, term, 0)
            out.append(acc)
        return out


def relation_system(n: int, variant: str = "z") -> RelationSystem:
    """Relation rows for level n.  ``variant="y"`` uses (y - x, -x, y) as the
    third argument of the three-term relation instead of B^2 q; it exists only as
    a negative control."""
    if variant not in VARIANTS:
        raise ValueError(f"unknown relation variant {variant!r}")
    space = enumerate_points(n)
    pts = space.points
    idx = np.arange(len(pts), dtype=np.int64)
    fam1 = np.stack([idx, space.indices(_apply(pts, MAT_A))], axis=1)
    fam2 = np.stack([idx, space.indices(_apply(pts, MAT_C))], axis=1)
    b1 = space.indices(_apply(pts, MAT_B))
    dropped = 0
    if variant == "z":
        b2 = space.indices(_apply(_apply(pts, MAT_B), MAT_B))
    else:
        x, y = pts[:, 0], pts[:, 1]
        b2 = space.indices(np.stack([y - x, -x, y], axis=1), allow_nonprimitive=True)
        dropped = int((b2 < 0).sum())
    fam3 = np.stack([idx, b1, b2], axis=1)
    return RelationSystem(
        n, space, variant, [(fam1, (1, 1)), (fam2, (1, -1)), (fam3, (1, 1, 1))], dropped
    )


# ---------------------------------------------------------------------------
# orbit quotient by the first two relation families


def sign_group() -> list[tuple[np.ndarray, int]]:
    """Closure of {A, C} under multiplication, each element with its character value.

    The character sends A to -1 and C to +1; consistency of the closure is asserted.
    """
    A = np.array(MAT_A, dtype=np.int64)
    C = np.array(MAT_C, dtype=np.int64)
    seen = {np.eye(3, dtype=np.int64).tobytes(): (np.eye(3, dtype=np.int64), 1)}
    frontier = [seen[next(iter(seen))]]
    while frontier:
        nxt = []
        for g, s in frontier:
            for h, t in ((A, -1), (C, 1)):
                gh = g @ h
                key = gh.tobytes()
                if key in seen:
                    assert seen[key][1] == s * t, "sign character is inconsistent"
                else:
                    seen[key] = (gh, s * t)
                    nxt.append(seen[key])
        frontier = nxt
    return [seen[k] for k in sorted(seen)]


@dataclass
class OrbitQuotient:
    """Orbits of the signed group on points.

    ``orbit[q]`` is the orbit number of point q (-1 when the orbit is forced to
    vanish) and ``sign[q]`` satisfies f(q) = sign[q] * f(rep of orbit).
    """

    n: int
    orbit: np.ndarray
    sign: np.ndarray
    reps: np.ndarray

    def __len__(self) -> int:
        return len(self.reps)

    def expand(self, orbit_values: np.ndarray) -> np.ndarray:
        vals = np.asarray(orbit_values)
        out = np.zeros(len(self.orbit), dtype=vals.dtype)
        live = self.orbit >= 0
        out[live] = vals[self.orbit[live]] * self.sign[live]
        return out


def orbit_quotient(space: P2) -> OrbitQuotient:
    n_pts = len(space)
    group = sign_group()
    perms = np.stack([space.act_all(g) for g, _ in group])
    chars = np.array([s for _, s in group], dtype=np.int64)
    best = perms.argmin(axis=0)
    rep_point = perms[best, np.arange(n_pts)]
    sign = chars[best]
    fixes_negatively = ((perms == np.arange(n_pts)) & (chars[:, None] < 0)).any(axis=0)
    dead = np.zeros(n_pts, dtype=bool)
    np.logical_or.at(dead, rep_point, fixes_negatively)
    dead = dead[rep_point]
    reps = np.unique(rep_point[~dead])
    lookup = np.full(n_pts, -1, dtype=np.int64)
    lookup[reps] = np.arange(len(reps))
    orbit = np.where(dead, -1, lookup[rep_point])
    sign = np.where(dead, 0, sign)
    return OrbitQuotient(space.n, orbit, sign, reps)


def reduced_rows(system: RelationSystem, quotient: OrbitQuotient) -> list[tuple[tuple[int, int], ...]]:
    """Three-term rows rewritten on orbit representatives, merged, sign-normalised
    (first coefficient positive) and deduplicated, in sorted order."""
    cols, coeffs = system.families[2]
    rows = set()
    orb = quotient.orbit
    sgn = quotient.sign
    for r in cols.tolist():
        d: dict[int, int] = {}
        for c, v in zip(r, coeffs):
            if c < 0 or orb[c] < 0:
                continue
            o = int(orb[c])
            d[o] = d.get(o, 0) + v * int(sgn[c])
        items = sorted((o, v) for o, v in d.items() if v)
        if not items:
            continue
        if items[0][1] < 0:
            items = [(o, -v) for o, v in items]
        rows.add(tuple(items))
    return sorted(rows)


# ---------------------------------------------------------------------------
# classes


@dataclass(eq=False)
class CohomClass:
    """A rational function on P^2(Z/N): integer numerators over all points and a
    positive common denominator."""

    level: int
    numerators: np.ndarray
    denominator: int = 1

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        if len(self.numerators) != len(enumerate_points(self.level)):
            raise LevelMismatch(
                f"{len(self.numerators)} values given, level {self.level} has "
                f"{len(enumerate_points(self.level))} points"
            )

    @classmethod
    def zero(cls, level: int) -> "CohomClass":
        return cls(level, np.zeros(len(enumerate_points(level)), dtype=np.int64))

    @classmethod
    def delta(cls, level: int, index: int) -> "CohomClass":
        v = np.zeros(len(enumerate_points(level)), dtype=np.int64)
        v[index] = 1
        return cls(level, v)

    @classmethod
    def from_dict(cls, level: int, values: dict[int, int], denominator: int = 1) -> "CohomClass":
        v = np.zeros(len(enumerate_points(level)), dtype=object)
        for k, c in values.items():
            v[k] = int(c)
        return cls(level, v, denominator)

    def items(self) -> Iterator[tuple[int, Fraction]]:
        """Sparse view: (point index, value) for nonzero values."""
        for i in np.flatnonzero(self.numerators):
            yield int(i), Fraction(int(self.numerators[i]), self.denominator)

    def __getitem__(self, i: int) -> Fraction:
        return Fraction(int(self.numerators[i]), self.denominator)

    def __eq__(self, other):
        if not isinstance(other, CohomClass):
            return NotImplemented
        return (
            self.level == other.level
            and all(
                int(a) * other.denominator == int(b) * self.denominator
                for a, b in zip(self.numerators, other.numerators)
            )
        )


def is_in_space(f: CohomClass, level: int | None = None) -> bool:
    """Exact check of all three relation families."""
    if level is not None and level != f.level:
        raise LevelMismatch(f"class has level {f.level}, expected {level}")
    system = _cached_system(f.level, "z")
    vals = f.numerators
    if vals.dtype != object and np.abs(vals).max(initial=0) > (1 << 60):
        vals = vals.astype(object)
    return all(not r.any() for r in system.residuals(vals))


# ---------------------------------------------------------------------------
# kernel


class HomologyBasis(Sequence[CohomClass]):
    """Exact basis of H, sequence of CohomClass.

    Internally each vector lives on orbit representatives: column j of
    ``orbit_matrix`` is an integer vector with content 1 and first nonzero
    entry positive.  ``free[j]`` is the orbit where vector j is the only basis
    vector with a nonzero value, and ``scale[j]`` is that value, so coordinates
    of any g in H are g(rep of free[j]) / scale[j].
    """

    def __init__(self, system: RelationSystem, quotient: OrbitQuotient, orbit_matrix: list[list[int]],
                 free: list[int]):
        self.level = system.n
        self.system = system
        self.quotient = quotient
        self.orbit_matrix = orbit_matrix  # list of columns
        self.free = free
        self.scale = [col[f] for col, f in zip(orbit_matrix, free)]
        self._classes: dict[int, CohomClass] = {}

    @property
    def dimension(self) -> int:
        return len(self.orbit_matrix)

    def __len__(self) -> int:
        return len(self.orbit_matrix)

    def __getitem__(self, j):
        if isinstance(j, slice):
            return [self[i] for i in range(*j.indices(len(self)))]
        if j < 0:
            j += len(self)
        if j not in self._classes:
            col = self.orbit_matrix[j]
            dtype = np.int64 if max(map(abs, col), default=0) < (1 << 62) else object
            vals = self.quotient.expand(np.array(col, dtype=dtype))
            self._classes[j] = CohomClass(self.level, vals)
        return self._classes[j]

    @property
    def pivot_points(self) -> list[int]:
        """Point index of the representative of each free orbit."""
        return [int(self.quotient.reps[f]) for f in self.free]


def _rref_mod(rows, ncols: int, p: int) -> tuple[list[int], dict[int, list[int]]]:
    """Pivot columns and, for each free column, the column of the RREF restricted to pivot rows."""
    M = nmod_mat(len(rows), ncols, p)
    for r, row in enumerate(rows):
        for c, v in row:
            M[r, c] = v % p
    R, rank = M.rref()
    pivots = []
    j = 0
    for i in range(rank):
        while int(R[i, j]) == 0:
            j += 1
        pivots.append(j)
        j += 1
    pset = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pset]
    entries = {f: [int(R[i, f]) for i in range(rank)] for f in free_cols}
    return pivots, entries


def _reconstruct(residues: dict[int, list[int]], modulus: int) -> dict[int, list[Fraction]] | None:
    out = {}
    for f, col in residues.items():
        fr = []
        for a in col:
            rr = rational_reconstruction(a, modulus)
            if rr is None:
                return None
            fr.append(Fraction(rr[0], rr[1]))
        out[f] = fr
    return out


def _normalise(vec: list[Fraction]) -> list[int]:
    den = 1
    for v in vec:
        den = den * v.denominator // gcd(den, v.denominator)
    ints = [int(v * den) for v in vec]
    g = 0
    for v in ints:
        g = gcd(g, v)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    return ints if first > 0 else [-v for v in ints]


def _verify(rows, columns: list[list[int]]) -> bool:
    for row in rows:
        for col in columns:
            if sum(v * col[c] for c, v in row):
                return False
    return True


def kernel_basis(system: RelationSystem, max_primes: int = 12) -> HomologyBasis:
    """Exact basis of the solution space of ``system``."""
    quotient = orbit_quotient(system.space)
    rows = reduced_rows(system, quotient)
    ncols = len(quotient)
    if ncols == 0:
        return HomologyBasis(system, quotient, [], [])
    primes = large_primes(max_primes)
    pivots = None
    modulus = 1
    residues: dict[int, list[int]] = {}
    candidate = None
    for p in primes:
        piv, ent = _rref_mod(rows, ncols, p)
        if pivots is not None and piv != pivots:
            if len(piv) < len(pivots) or (len(piv) == len(pivots) and piv > pivots):
                continue  # unlucky prime
            pivots, modulus, residues, candidate = None, 1, {}, None
        if pivots is None:
            pivots, modulus, residues = piv, p, ent
        else:
            if candidate is not None and all(
                all((fr.numerator - fr.denominator * a) % p == 0 for fr, a in zip(candidate[f], ent[f]))
                for f in ent
            ):
                break
            for f in residues:
                residues[f] = [crt_pair(r1, modulus, r2, p)[0] for r1, r2 in zip(residues[f], ent[f])]
            modulus *= p
        candidate = _reconstruct(residues, modulus)
    else:
        raise KernelError(f"kernel did not stabilise after {max_primes} primes")
    free = sorted(candidate)
    columns = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -candidate[f][i]
        columns.append(_normalise(vec))
    if not _verify(rows, columns):
        raise KernelError("reconstructed kernel fails the exact check")
    return HomologyBasis(system, quotient, columns, free)


@lru_cache(maxsize=4)
def _cached_system(n: int, variant: str) -> RelationSystem:
    return relation_system(n, variant)


@lru_cache(maxsize=4)
def homology_basis(n: int, variant: str = "z") -> HomologyBasis:
    return kernel_basis(_cached_system(n, variant))


def dimension(n: int, variant: str = "z") -> int:
    return homology_basis(n, variant).dimension
