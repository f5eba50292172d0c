"""Exact checks on deformations of a weight-2 polarized Hodge structure with
Hodge numbers (2, 2, 2).

Basis order is (e1, e2, f1, f2, conj e1, conj e2).  Entries are Gaussian
rationals; transposes are plain transposes, never conjugate transposes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .arith.quadratic import QuadElem

Matrix = list[list[QuadElem]]

ZERO = QuadElem(-1, 0)
ONE = QuadElem(-1, 1)


def gauss(v) -> QuadElem:
    if isinstance(v, QuadElem):
        return v
    if isinstance(v, complex):
        return QuadElem(-1, Fraction(v.real).limit_denominator(), Fraction(v.imag).limit_denominator())
    return QuadElem(-1, v, 0)


def mat(rows) -> Matrix:
    return [[gauss(v) for v in row] for row in rows]


def zeros(n: int, m: int | None = None) -> Matrix:
    return [[ZERO] * (m if m is not None else n) for _ in range(n)]


def identity(n: int) -> Matrix:
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    Bt = transpose(B)
    out = []
    for row in A:
        out.append([sum((a * b for a, b in zip(row, col) if a and b), ZERO) for col in Bt])
    return out


def matadd(A: Matrix, B: Matrix) -> Matrix:
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def is_zero(M: Matrix) -> bool:
    return all(not v for row in M for v in row)


def blocks(rows: list[list[Matrix | int]]) -> Matrix:
    """Assemble 2x2 blocks; the integer 0 stands for a zero block."""
    out = []
    for brow in rows:
        parts = [zeros(2) if isinstance(b, int) and b == 0 else b for b in brow]
        for i in range(2):
            out.append([v for part in parts for v in part[i]])
    return out


def _scaled(M: Matrix, c) -> Matrix:
    return [[v * c for v in row] for row in M]


@dataclass(frozen=True)
class HodgeFrame:
    Q: tuple
    J: tuple
    labels: tuple = ("e1", "e2", "f1", "f2", "e1bar", "e2bar")

    def q(self) -> Matrix:
        return [list(r) for r in self.Q]

    def j(self) -> Matrix:
        return [list(r) for r in self.J]


def standard_frame() -> HodgeFrame:
    I2 = identity(2)
    Q = blocks([[0, 0, _scaled(I2, -1)], [0, I2, 0], [_scaled(I2, -1), 0, 0]])
    J = [[(ONE if i in (2, 3) else -ONE) if i == j else ZERO for j in range(6)] for i in range(6)]
    return HodgeFrame(tuple(map(tuple, Q)), tuple(map(tuple, J)))


FRAME = standard_frame()


def form(v, w, frame: HodgeFrame = FRAME) -> QuadElem:
    """Psi(v, w) = v^T Q w."""
    Qm = frame.q()
    return sum((gauss(v[i]) * Qm[i][j] * gauss(w[j]) for i in range(6) for j in range(6) if Qm[i][j]), ZERO)


def real_vector(z1, z2, r1, r2) -> list[QuadElem]:
    """Coordinates of a real vector: conjugate coefficients on e and conj e."""
    z1, z2 = gauss(z1), gauss(z2)
    return [z1, z2, gauss(r1), gauss(r2), z1.conjugate(), z2.conjugate()]


def make_N(A) -> Matrix:
    """N(A) = [[0, 0, 0], [A, 0, 0], [0, A^T, 0]] in 2x2 blocks."""
    A = mat(A)
    return blocks([[0, 0, 0], [A, 0, 0], [0, transpose(A), 0]])


def polarization_preserved(M: Matrix, frame: HodgeFrame = FRAME) -> bool:
    """M^T Q + Q M = 0."""
    M = mat(M)
    Qm = frame.q()
    return is_zero(matadd(matmul(transpose(M), Qm), matmul(Qm, M)))


def symplectic_E(A, B) -> QuadElem:
    A, B = mat(A), mat(B)
    return A[0][0] * B[0][1] - A[0][1] * B[0][0] + A[1][0] * B[1][1] - A[1][1] * B[1][0]


def griffiths_commute(A, B) -> bool:
    NA, NB = make_N(A), make_N(B)
    return matmul(NA, NB) == matmul(NB, NA)


def tAB_symmetric(A, B) -> bool:
    P = matmul(transpose(mat(A)), mat(B))
    return P == transpose(P)


# -- isotropic subspaces of (M_2, E) --


def _flat(A) -> list[QuadElem]:
    A = mat(A)
    return [A[0][0], A[0][1], A[1][0], A[1][1]]


def _rank(rows: list[list[QuadElem]]) -> int:
    rows = [list(r) for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col] / rows[rank][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def span_dimension(mats) -> int:
    return _rank([_flat(A) for A in mats]) if mats else 0


def _e_row(A) -> list[QuadElem]:
    """Coefficients of the linear form B -> E(A, B) on (b11, b12, b21, b22)."""
    a11, a12, a21, a22 = _flat(A)
    return [-a12, a11, -a22, a21]


def e_orthogonal_dimension(mats) -> int:
    """Dimension of {B : E(A, B) = 0 for all A in mats}."""
    return 4 - _rank([_e_row(A) for A in mats])


def is_maximal_isotropic(mats) -> bool:
    """span(mats) is isotropic and equals its own E-orthogonal."""
    if any(symplectic_E(A, B) for A in mats for B in mats):
        return False
    return span_dimension(mats) == e_orthogonal_dimension(mats)


def random_gauss(rng: random.Random, bound: int = 5, den: int = 3) -> QuadElem:
    return QuadElem(-1, Fraction(rng.randint(-bound, bound), rng.randint(1, den)),
                    Fraction(rng.randint(-bound, bound), rng.randint(1, den)))


def random_matrix(rng: random.Random, bound: int = 5) -> Matrix:
    return [[random_gauss(rng, bound) for _ in range(2)] for _ in range(2)]


def random_isotropic_pair(rng: random.Random) -> tuple[Matrix, Matrix]:
    """A and B spanning a 2-dimensional E-isotropic plane."""
    while True:
        A = random_matrix(rng)
        # complete A inside its E-orthogonal (a 3-space containing A)
        row = _e_row(A)
        if not any(row):
            continue
        B = random_matrix(rng)
        # adjust one coordinate of B so that E(A, B) = 0
        k = next(i for i, c in enumerate(row) if c)
        flat = _flat(B)
        rest = sum((row[i] * flat[i] for i in range(4) if i != k), ZERO)
        flat[k] = -rest / row[k]
        B = [[flat[0], flat[1]], [flat[2], flat[3]]]
        if span_dimension([A, B]) == 2:
            return A, B


def combine(coeffs, mats) -> Matrix:
    out = zeros(2)
    for c, A in zip(coeffs, mats):
        out = matadd(out, _scaled(A, gauss(c)))
    return out
