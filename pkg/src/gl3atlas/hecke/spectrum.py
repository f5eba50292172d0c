"""Characteristic polynomials, eigenvalue multiplicities, factor fields and the b_p test."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import comb, gcd

from flint import fmpq, fmpq_mat, fmpz_mat, fmpz_poly, nmod_mat

from ..arith.numbers import crt_pair, large_primes, squarefree_part
from ..arith.polynomial import IntPolynomial
from .operators import DEFAULT_CONVENTION, HeckeMatrix, cached_hecke_matrix, restricted_operator


class AmbiguityError(ValueError):
    """The requested eigenspace does not have dimension 2."""


def _centered(r: int, m: int) -> int:
    r %= m
    return r - m if r > m // 2 else r


def integer_charpoly(M: fmpz_mat) -> IntPolynomial:
    """Characteristic polynomial of an integer matrix by CRT over word-size primes.

    Primes are added until the modulus exceeds twice a Gershgorin-type
    coefficient bound; one further prime must then agree.
    """
    n = M.nrows()
    if n == 0:
        return IntPolynomial((1,))
    row_sums = [sum(abs(int(M[i, j])) for j in range(n)) for i in range(n)]
    rho = max(row_sums)  # spectral radius bound
    bound = max(comb(n, k) * rho**k for k in range(n + 1))
    coeffs = None
    modulus = 1
    entries = [[int(M[i, j]) for j in range(n)] for i in range(n)]
    for p in large_primes(64):
        cp = nmod_mat(entries, p).charpoly()
        res = [int(c) for c in cp.coeffs()] + [0] * (n + 1 - len(cp.coeffs()))
        if coeffs is None:
            coeffs, modulus = res, p
            continue
        if modulus > 2 * bound:
            if all(_centered(c, modulus) % p == r for c, r in zip(coeffs, res)):
                return IntPolynomial(_centered(c, modulus) for c in coeffs)
            raise ArithmeticError("multi-modular characteristic polynomial failed verification")
        coeffs = [crt_pair(c, modulus, r, p)[0] for c, r in zip(coeffs, res)]
        modulus *= p
    raise ArithmeticError("ran out of primes")


def charpoly(H: HeckeMatrix | fmpz_mat | fmpq_mat) -> IntPolynomial:
    """Exact characteristic polynomial; rational input must have an integral charpoly."""
    if isinstance(H, HeckeMatrix):
        num, den = H.numerators, H.denominator
    elif isinstance(H, fmpz_mat):
        num, den = H, 1
    else:
        den = 1
        for i in range(H.nrows()):
            for j in range(H.ncols()):
                q = H[i, j].q
                den = den * int(q) // gcd(den, int(q))
        scaled = H * den
        num = fmpz_mat([[int(scaled[i, j].p) for j in range(H.ncols())] for i in range(H.nrows())])
    n = num.nrows()
    cp = integer_charpoly(num)
    # charpoly of num/den: coefficient k is c_k / den^(n-k)
    out = []
    for k, c in enumerate(cp.coeffs):
        scale = den ** (n - k)
        if c % scale:
            raise ArithmeticError("characteristic polynomial is not integral")
        out.append(c // scale)
    return IntPolynomial(out)


def eigenvalue_check(H, m: IntPolynomial) -> int:
    """Largest k with m^k dividing the characteristic polynomial of H."""
    if not m.is_monic():
        raise ValueError("eigenvalue_check needs a monic polynomial")
    if m.degree < 1:
        raise ValueError("eigenvalue_check needs a polynomial of positive degree")
    cp = H if isinstance(H, IntPolynomial) else charpoly(H)
    k = 0
    while cp.degree >= m.degree:
        q, r = cp.divmod_monic(m)
        if not r.is_zero():
            break
        cp, k = q, k + 1
    return k


def field_tag(f: IntPolynomial) -> int | None:
    """Square-free part of the discriminant for a quadratic factor, 1 for a linear one."""
    if f.degree == 1:
        return 1
    if f.degree == 2:
        c, b, a = f.coeffs
        return squarefree_part(b * b - 4 * a * c)
    return None


@dataclass
class Spectrum:
    """Irreducible factorization of a characteristic polynomial."""

    factors: list[tuple[IntPolynomial, int]]
    max_degree: int = 4

    @property
    def census(self) -> Counter:
        """Counter {(degree, multiplicity): number of distinct factors}, degree <= max_degree."""
        return Counter((f.degree, e) for f, e in self.factors if f.degree <= self.max_degree)

    @property
    def degree_totals(self) -> Counter:
        """Counter {degree: total multiplicity} over resolved factors."""
        out: Counter = Counter()
        for f, e in self.factors:
            if f.degree <= self.max_degree:
                out[f.degree] += e
        return out

    @property
    def unresolved(self) -> list[tuple[int, int]]:
        return [(f.degree, e) for f, e in self.factors if f.degree > self.max_degree]

    def rational_count(self) -> int:
        return sum(e for f, e in self.factors if f.degree == 1)

    def dimension_by_field(self) -> Counter:
        """Counter {tag: dimension} where tag is 1 (rational), the discriminant tag of
        a quadratic factor, or ('deg', d) for higher degree."""
        out: Counter = Counter()
        for f, e in self.factors:
            tag = field_tag(f)
            out[tag if tag is not None else ("deg", f.degree)] += f.degree * e
        return out

    def as_multiset(self) -> Counter:
        """Counter {degree: number of irreducible factors counted with multiplicity}."""
        out: Counter = Counter()
        for f, e in self.factors:
            if f.degree <= self.max_degree:
                out[f.degree] += e
        return out


def spectrum_fields(H, max_degree: int = 4) -> Spectrum:
    cp = H if isinstance(H, IntPolynomial) else charpoly(H)
    if cp.degree <= 0:
        return Spectrum([], max_degree)
    _, facs = fmpz_poly(list(cp.coeffs)).factor()
    factors = [(IntPolynomial.from_flint(f), int(e)) for f, e in facs]
    factors.sort(key=lambda fe: (fe[0].degree, fe[0].coeffs))
    return Spectrum(factors, max_degree)


# ---------------------------------------------------------------------------
# the b_p test


def _poly_at_matrix(m: IntPolynomial, X: fmpq_mat) -> fmpq_mat:
    n = X.nrows()
    acc = fmpq_mat(n, n)
    for c in reversed(m.coeffs):
        acc = acc * X
        for i in range(n):
            acc[i, i] += c
    return acc


def eigenspace(X: fmpq_mat, m: IntPolynomial) -> list[list[fmpq]]:
    """Rational basis of ker m(X), as coordinate column vectors."""
    return eigenspace_of_matrix(_poly_at_matrix(m, X))


def _nullspace(Y: fmpq_mat):
    n = Y.ncols()
    R, rank = Y.rref()
    pivots = []
    j = 0
    for i in range(rank):
        while R[i, j] == 0:
            j += 1
        pivots.append(j)
        j += 1
    free = [c for c in range(n) if c not in pivots]
    K = fmpq_mat(n, max(len(free), 1))
    for k, f in enumerate(free):
        K[f, k] = 1
        for i, pc in enumerate(pivots):
            K[pc, k] = -R[i, f]
    return K, len(free)


def classify_pair(E: fmpq_mat, D: fmpq_mat, m: IntPolynomial) -> str:
    """'conjugate' if D = t I - E with t = -(X coefficient of m), 'equal' if D = E, else 'other'."""
    n = E.nrows()
    t = -m.coeffs[1]
    conj = fmpq_mat([[(t if i == j else 0) - E[i, j] for j in range(n)] for i in range(n)])
    if D == conj:
        return "conjugate"
    if D == E:
        return "equal"
    return "other"


def dp_relation(n: int, p: int, m: IntPolynomial, refine: list[tuple[int, IntPolynomial]] = (),
                convention: str = DEFAULT_CONVENTION, E_restricted: bool = False) -> str:
    """Compare E_p and D_p on V = ker m(E_p) (intersected with ker m_q(E_q) for each
    (q, m_q) in ``refine``).  V must be 2-dimensional."""
    if m.degree != 2 or not m.is_monic():
        raise ValueError("dp_relation needs a monic quadratic")
    V = _subspace(n, p, m, refine, convention, E_restricted)
    if len(V) != 2:
        raise AmbiguityError(f"eigenspace has dimension {len(V)}, expected 2")
    E_V = restricted_operator(n, p, "E", V, convention=convention)
    D_V = restricted_operator(n, p, "D", V, convention=convention)
    return classify_pair(E_V, D_V, m)


def _subspace(n, p, m, refine, convention, E_restricted):
    """Intersection of the kernels; E_p itself is taken from the full matrix unless
    ``E_restricted`` and a refining prime pins the space down first."""
    constraints = list(refine)
    if not E_restricted:
        constraints = [(p, m)] + constraints
    V = None
    for q, mq in constraints:
        X = cached_hecke_matrix(n, q, "E", convention).rational()
        if V is None:
            V = eigenspace(X, mq)
        else:
            V = _intersect_invariant(V, X, mq)
    if E_restricted:
        if V is None:
            raise ValueError("E_restricted needs at least one refining prime")
        Y = restricted_operator(n, p, "E", V, convention=convention)
        sub = eigenspace(Y, m)
        V = [[sum((c[k] * V[k][i] for k in range(len(V))), fmpq(0)) for i in range(len(V[0]))] for c in sub]
    return V


def _intersect_invariant(V, X: fmpq_mat, m: IntPolynomial):
    """Vectors of span(V) killed by m(X)."""
    B = fmpq_mat([list(col) for col in zip(*V)])  # dim x k
    Y = _poly_at_matrix(m, X) * B
    sub = eigenspace_of_matrix(Y)
    return [[sum((c[k] * V[k][i] for k in range(len(V))), fmpq(0)) for i in range(len(V[0]))] for c in sub]


def eigenspace_of_matrix(Y: fmpq_mat) -> list[list[fmpq]]:
    K, nullity = _nullspace(Y)
    return [[K[i, j] for i in range(K.nrows())] for j in range(nullity)]
