"""Hecke operators E_p and D_p on H via coset representatives and symbol reduction."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from flint import fmpq, fmpq_mat, fmpz_mat

from ..arith.numbers import is_prime
from ..homology import HomologyBasis, homology_basis
from ..projspace import enumerate_points, lift_to_sl3
from .symbols import CONVENTIONS, SymbolSum, adj3, matmul3, reduce_symbol, transpose3

DEFAULT_CONVENTION = "cofactor"


class BadPrime(ValueError):
    pass


class ConventionError(RuntimeError):
    """T f left the space H: the evaluation convention is not well defined."""


def coset_reps(p: int, kind: str) -> list[tuple[tuple[int, ...], ...]]:
    """Row-Hermite representatives of Gamma diag(p,1,1) Gamma (E) or Gamma diag(p,p,1) Gamma (D)."""
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    reps = []
    if kind == "E":
        reps.append(((p, 0, 0), (0, 1, 0), (0, 0, 1)))
        reps += [((1, a, 0), (0, p, 0), (0, 0, 1)) for a in range(p)]
        reps += [((1, 0, a), (0, 1, b), (0, 0, p)) for a in range(p) for b in range(p)]
    elif kind == "D":
        reps.append(((p, 0, 0), (0, p, 0), (0, 0, 1)))
        reps += [((p, 0, 0), (0, 1, c), (0, 0, p)) for c in range(p)]
        reps += [((1, a, b), (0, p, 0), (0, 0, p)) for a in range(p) for b in range(p)]
    else:
        raise ValueError(f"kind must be 'E' or 'D', got {kind!r}")
    return reps


def _symbol(h, b, convention: str):
    if convention == "cofactor":
        return matmul3(b, adj3(h))
    if convention == "first-column":
        return matmul3(h, b)
    if convention == "transposed":
        return matmul3(h, transpose3(b))
    raise ValueError(f"unknown convention {convention!r}")


def hecke_image_sum(n: int, point_index: int, p: int, kind: str, convention: str = DEFAULT_CONVENTION,
                    rng: random.Random | None = None) -> SymbolSum:
    """SymbolSum S with (T f)(q) = sum S[k] f(k) for every f in H."""
    space = enumerate_points(n)
    h = lift_to_sl3(space.point(point_index))
    out = SymbolSum(n)
    for b in coset_reps(p, kind):
        out += reduce_symbol(_symbol(h, b, convention), n, convention, rng=rng, space=space)
    return out


def _orbit_row(basis: HomologyBasis, s: SymbolSum) -> dict[int, int]:
    q = basis.quotient
    row: dict[int, int] = {}
    for k, c in s.terms.items():
        o = int(q.orbit[k])
        if o >= 0:
            row[o] = row.get(o, 0) + c * int(q.sign[k])
    return row


def _apply_rows(basis: HomologyBasis, rows: list[dict[int, int]]) -> list[list[int]]:
    """values[i][j] = sum_o rows[i][o] * basis_j(orbit o), exact integers."""
    return [[sum(c * col[o] for o, c in row.items()) for col in basis.orbit_matrix] for row in rows]


@dataclass
class HeckeMatrix:
    """X with T f_j = sum_i X[i, j] f_i, stored as integer numerators over a common denominator."""

    level: int
    p: int
    kind: str
    convention: str
    numerators: fmpz_mat
    denominator: int = 1

    @property
    def dim(self) -> int:
        return self.numerators.nrows()

    def rational(self) -> fmpq_mat:
        return fmpq_mat(self.numerators) / self.denominator

    def entry(self, i: int, j: int) -> fmpq:
        return fmpq(int(self.numerators[i, j]), self.denominator)

    def __matmul__(self, other: "HeckeMatrix") -> fmpq_mat:
        return self.rational() * other.rational()


def _check_point(n: int, p: int):
    if not is_prime(p):
        raise BadPrime(f"{p} is not prime")
    if n % p == 0:
        raise BadPrime(f"{p} divides the level {n}")


def _spot_points(basis: HomologyBasis, count: int) -> list[int]:
    free = set(basis.free)
    others = [o for o in range(len(basis.quotient)) if o not in free]
    if not others or count <= 0:
        return []
    step = max(1, len(others) // count)
    return others[::step][:count]


def hecke_matrix(n: int, p: int, kind: str, basis: HomologyBasis | None = None,
                 convention: str = DEFAULT_CONVENTION, spot_checks: int = 3,
                 full_check: bool = False) -> HeckeMatrix:
    """Matrix of E_p or D_p on H in the basis ``basis`` (default: the cached kernel basis).

    The operator is evaluated only at the free orbit representatives, which are
    coordinates on H.  ``spot_checks`` further orbits are evaluated as a
    consistency test; ``full_check`` evaluates every orbit.
    """
    _check_point(n, p)
    if convention not in CONVENTIONS:
        raise ValueError(f"unknown convention {convention!r}")
    basis = basis if basis is not None else homology_basis(n)
    dim = basis.dimension
    if dim == 0:
        return HeckeMatrix(n, p, kind, convention, fmpz_mat(0, 0))
    reps = basis.quotient.reps
    rows = [_orbit_row(basis, hecke_image_sum(n, int(reps[o]), p, kind, convention)) for o in basis.free]
    vals = _apply_rows(basis, rows)
    den = 1
    for s in basis.scale:
        den = den * abs(s) // gcd(den, abs(s))
    num = fmpz_mat([[vals[i][j] * den // basis.scale[i] for j in range(dim)] for i in range(dim)])
    H = HeckeMatrix(n, p, kind, convention, num, den)

    check = range(len(basis.quotient)) if full_check else _spot_points(basis, spot_checks)
    free = set(basis.free)
    check = [o for o in check if o not in free]
    if check:
        crow = [_orbit_row(basis, hecke_image_sum(n, int(reps[o]), p, kind, convention)) for o in check]
        got = _apply_rows(basis, crow)
        for r, o in enumerate(check):
            for j in range(dim):
                # expected (T f_j)(o) = sum_i X[i, j] f_i(o)
                lhs = got[r][j] * den
                rhs = sum(int(num[i, j]) * basis.orbit_matrix[i][o] for i in range(dim))
                if lhs != rhs:
                    raise ConventionError(
                        f"T f_{j} is not in H at level {n} (p={p}, {kind}, convention {convention})"
                    )
    return H


@lru_cache(maxsize=64)
def cached_hecke_matrix(n: int, p: int, kind: str, convention: str = DEFAULT_CONVENTION) -> HeckeMatrix:
    return hecke_matrix(n, p, kind, convention=convention)


def restricted_operator(n: int, p: int, kind: str, vectors: list[list[fmpq]],
                        basis: HomologyBasis | None = None,
                        convention: str = DEFAULT_CONVENTION) -> fmpq_mat:
    """Matrix of T on a T-stable subspace V of H given by coordinate vectors.

    Only dim V (+1 for checking) evaluation points are needed, which makes this
    usable for large p where the full matrix is too expensive.  Returns Y with
    T v_j = sum_i Y[i, j] v_i.
    """
    _check_point(n, p)
    basis = basis if basis is not None else homology_basis(n)
    k = len(vectors)
    n_orb = len(basis.quotient)
    K = fmpz_mat([[basis.orbit_matrix[i][o] for i in range(basis.dimension)] for o in range(n_orb)])
    W = fmpq_mat(K) * fmpq_mat([list(col) for col in zip(*vectors)])  # orbit values of each v_j

    chosen: list[int] = []
    free = set(basis.free)
    for o in basis.free + [o for o in range(n_orb) if o not in free]:
        trial = chosen + [o]
        if fmpq_mat([[W[t, j] for j in range(k)] for t in trial]).rank() == len(trial):
            chosen = trial
        if len(chosen) == k:
            break
    extra = next((o for o in range(n_orb) if o not in chosen), None)
    pts = chosen + ([extra] if extra is not None else [])
    reps = basis.quotient.reps
    rows = [_orbit_row(basis, hecke_image_sum(n, int(reps[o]), p, kind, convention)) for o in pts]
    tv = [[sum((W[o, j] * c for o, c in row.items()), fmpq(0)) for j in range(k)] for row in rows]
    V = fmpq_mat([[W[t, j] for j in range(k)] for t in chosen])
    Y = V.solve(fmpq_mat(tv[:k]))
    if extra is not None:
        pred = [sum((W[extra, i] * Y[i, j] for i in range(k)), fmpq(0)) for j in range(k)]
        if pred != tv[k]:
            raise ConventionError("subspace is not stable under the operator")
    return Y
