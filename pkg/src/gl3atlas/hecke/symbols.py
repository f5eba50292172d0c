"""Integer modular symbols and their reduction to unimodular ones.

A symbol is a 3x3 integer matrix whose columns are its three vectors.  If
|det M| > 1 we pick a nonzero integer vector w with M^-1 w strictly inside the
unit cube and use

    [v1, v2, v3] = [w, v2, v3] + [v1, w, v3] + [v1, v2, w],

whose children have determinants (adj(M) w)_i, all smaller than |det M|.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable

from flint import fmpz_mat

from ..projspace import P2, enumerate_points

Matrix = tuple[tuple[int, ...], ...]

CONVENTIONS = ("cofactor", "first-column", "transposed")


class ReductionError(RuntimeError):
    """No reducing vector was found; indicates a bug, never expected."""


def det3(m) -> int:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def adj3(m) -> Matrix:
    """Adjugate: adj(m) @ m = det(m) * I."""
    a, b, c = m[0]
    d, e, f = m[1]
    g, h, i = m[2]
    return (
        (e * i - f * h, c * h - b * i, b * f - c * e),
        (f * g - d * i, a * i - c * g, c * d - a * f),
        (d * h - e * g, b * g - a * h, a * e - b * d),
    )


def matmul3(a, b) -> Matrix:
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3)) for i in range(3))


def transpose3(a) -> Matrix:
    return tuple(tuple(a[j][i] for j in range(3)) for i in range(3))


def _with_column(m, j: int, w) -> Matrix:
    return tuple(tuple(w[i] if k == j else m[i][k] for k in range(3)) for i in range(3))


_SMALL = [c for c in itertools.product((-1, 0, 1), repeat=3) if any(c)]
_WIDE = [c for c in itertools.product(range(-3, 4), repeat=3) if any(c) and max(map(abs, c)) > 1]


def reducing_vectors(m) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Admissible (w, adj(m) w) pairs found from a reduced basis of the lattice adj(m) Z^3.

    The search runs over small combinations of the reduced basis; it stops at the
    first shell that contains admissible vectors.
    """
    d = abs(det3(m))
    A = adj3(m)
    rows = fmpz_mat([[A[0][j], A[1][j], A[2][j]] for j in range(3)])
    red, U = rows.lll(transform=True)
    basis = [[int(red[k, t]) for t in range(3)] for k in range(3)]
    coeffs = [[int(U[k, t]) for t in range(3)] for k in range(3)]
    for shell in (_SMALL, _WIDE):
        found = []
        for c in shell:
            v = tuple(c[0] * basis[0][t] + c[1] * basis[1][t] + c[2] * basis[2][t] for t in range(3))
            if max(abs(x) for x in v) < d:
                w = tuple(c[0] * coeffs[0][t] + c[1] * coeffs[1][t] + c[2] * coeffs[2][t] for t in range(3))
                found.append((w, v))
        if found:
            return found
    raise ReductionError(f"no reducing vector for {m}")


def _best(cands):
    return min(cands, key=lambda wv: (max(map(abs, wv[1])), sum(map(abs, wv[1])), wv[0]))


def unimodular_leaves(m, rng: random.Random | None = None) -> list[Matrix]:
    """Unimodular symbols (det +-1) whose sum is equivalent to m, each with sign +1.

    With ``rng`` the reducing vector is drawn at random among admissible ones;
    otherwise a deterministic shortest choice is used.
    """
    m = tuple(tuple(int(x) for x in row) for row in m)
    d0 = det3(m)
    if d0 == 0:
        raise ValueError("cannot reduce a symbol with determinant 0")
    out: list[Matrix] = []
    stack = [(m, abs(d0), 0)]
    while stack:
        cur, d, depth = stack.pop()
        assert depth <= abs(d0), "recursion deeper than the starting determinant"
        if d == 1:
            out.append(cur)
            continue
        cands = reducing_vectors(cur)
        w, v = rng.choice(cands) if rng is not None else _best(cands)
        for j in range(3):
            if v[j]:
                assert abs(v[j]) < d
                stack.append((_with_column(cur, j, w), abs(v[j]), depth + 1))
    return out


def evaluation_vector(g, convention: str) -> tuple[tuple[int, int, int], int]:
    """The point vector and sign at which a unimodular symbol g pairs with f."""
    if convention == "cofactor":
        a = adj3(g)
        return (a[0][0], a[1][0], a[2][0]), 1
    s = det3(g)
    if convention == "first-column":
        return (g[0][0], g[1][0], g[2][0]), s
    if convention == "transposed":
        a = adj3(g)  # first column of (g^-1)^T is the first row of g^-1 = s * adj(g)
        return (s * a[0][0], s * a[0][1], s * a[0][2]), s
    raise ValueError(f"unknown convention {convention!r}")


@dataclass
class SymbolSum:
    """Formal integer combination of points of P^2(Z/N), keyed by point index."""

    level: int
    terms: dict[int, int] = field(default_factory=dict)

    def add(self, index: int, coeff: int = 1) -> None:
        c = self.terms.get(index, 0) + coeff
        if c:
            self.terms[index] = c
        else:
            self.terms.pop(index, None)

    def __iadd__(self, other: "SymbolSum") -> "SymbolSum":
        for k, v in other.terms.items():
            self.add(k, v)
        return self

    def pairs(self) -> list[tuple[object, int, int]]:
        """(ProjPoint, sign, multiplicity) triples in point order."""
        space = enumerate_points(self.level)
        return [(space.point(k), 1 if v > 0 else -1, abs(v)) for k, v in sorted(self.terms.items())]

    def pair_with(self, value_at: Callable[[int], object]):
        return sum(v * value_at(k) for k, v in self.terms.items())


def reduce_symbol(m, n: int, convention: str = "cofactor", rng: random.Random | None = None,
                  space: P2 | None = None) -> SymbolSum:
    """Reduce m to unimodular symbols and collect their evaluation points mod n."""
    space = space or enumerate_points(n)
    out = SymbolSum(n)
    for g in unimodular_leaves(m, rng):
        vec, s = evaluation_vector(g, convention)
        out.add(space.index(vec), s)
    return out
