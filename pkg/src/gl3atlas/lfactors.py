"""Local L-factor algebra for GL(3) and GL(2) data.

Local factors are kept as coefficient data: a cubic X^3 - a X^2 + p b X - p^3
is the reversed Euler factor 1 - a p^-s + b p^(1-2s) - p^(3-3s).
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational

import numpy as np

from .arith.characters import DirichletChar
from .arith.numbers import is_prime
from .arith.quadratic import QuadElem


class BadPrime(ValueError):
    pass


class HasseViolation(ValueError):
    pass


def _quad(v, d: int = -1) -> QuadElem:
    if isinstance(v, QuadElem):
        return v
    if isinstance(v, complex):
        if d != -1:
            raise ValueError("complex input only makes sense in Q(i)")
        return QuadElem(-1, Fraction(v.real).limit_denominator(), Fraction(v.imag).limit_denominator())
    if isinstance(v, tuple):
        return QuadElem(d, v[0], v[1])
    if isinstance(v, (int, Rational)):
        return QuadElem(d, v, 0)
    raise TypeError(f"cannot read {v!r} as a quadratic field element")


@dataclass(frozen=True)
class LocalCubic:
    """X^3 - a X^2 + p b X - p^3."""

    p: int
    a: QuadElem
    b: QuadElem

    def __post_init__(self):
        a = _quad(self.a)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", _quad(self.b, a.d))

    @property
    def coeffs(self) -> tuple[QuadElem, ...]:
        """Coefficients from the constant term up."""
        p = self.p
        return (QuadElem(self.a.d, -(p**3)), self.b * p, -self.a, QuadElem(self.a.d, 1))

    def complex_coeffs(self) -> list[complex]:
        """Highest degree first, for numpy."""
        return [complex(c) for c in reversed(self.coeffs)]

    def __str__(self):
        return f"X^3 - ({self.a}) X^2 + {self.p} ({self.b}) X - {self.p ** 3}"


@dataclass(frozen=True)
class LocalQuadratic:
    """1 - a p^-s + p^(1-2s), i.e. X^2 - a X + p."""

    p: int
    a: int
    cuspidal: bool = True

    def __post_init__(self):
        if self.cuspidal and self.a * self.a > 4 * self.p:
            raise HasseViolation(f"|a| = {abs(self.a)} exceeds 2 sqrt({self.p})")


def gl3_local(a, p: int) -> LocalCubic:
    a = _quad(a)
    return LocalCubic(p, a, a.conjugate())


def dual_cubic(L: LocalCubic) -> LocalCubic:
    """Cubic whose roots are p^2 / conj(alpha) for the roots alpha of L.

    e1' = p^2 conj(e2)/conj(e3) = conj(b), e2' = p^4 conj(e1)/conj(e3) = p conj(a).
    """
    return LocalCubic(L.p, L.b.conjugate(), L.a.conjugate())


def contragredient(L: LocalCubic) -> LocalCubic:
    """Cubic whose roots are p^2 / alpha: the Tate-twisted dual."""
    return LocalCubic(L.p, L.b, L.a)


def is_selfdual(L: LocalCubic) -> bool:
    """Whether the Tate-twisted dual has the same local factor; for b = conj(a)
    this holds exactly when a is real."""
    if L.b != L.a.conjugate():
        raise ValueError("is_selfdual expects a factor with b = conj(a)")
    return contragredient(L) == L


def eisenstein_lift(a: int, p: int, type: int) -> int:
    """E_p eigenvalue of the lift of a GL(2) form with eigenvalue a."""
    if type == 1:
        return p * a + 1
    if type == 2:
        return a + p * p
    raise ValueError("lift type must be 1 or 2")


def _check_v5(chi: DirichletChar, psi: DirichletChar, p: int):
    for c in (chi, psi):
        if c.modulus != 7 or 3 % c.order:
            raise ValueError("characters must have modulus 7 and order dividing 3")
    if p == 7:
        raise BadPrime("p = 7 divides the modulus")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def v5_formula(chi: DirichletChar, psi: DirichletChar, p: int) -> QuadElem:
    """chi(p) (psi(p) + p + psi(p)^2 p^2) in Q(sqrt(-3))."""
    _check_v5(chi, psi, p)
    s = psi(p)
    return chi(p) * (s + p + s * s * p * p)


def v5_galois_sum(chi: DirichletChar, psi: DirichletChar, p: int) -> QuadElem:
    """Trace of Frobenius on chi psi + chi(-1) + chi psi^2(-2)."""
    _check_v5(chi, psi, p)
    return (chi * psi)(p) + chi(p) * p + (chi * psi**2)(p) * p * p


def sym2_local(a: int, p: int) -> LocalCubic:
    """Roots alpha^2, p, beta^2 where alpha + beta = a and alpha beta = p."""
    if a * a > 4 * p:
        raise HasseViolation(f"|a| = {abs(a)} exceeds 2 sqrt({p})")
    t = a * a - p
    return LocalCubic(p, t, t)


# -- exact square-free part, so repeated roots do not spoil the numerics --


def _strip(f: list[QuadElem]) -> list[QuadElem]:
    while f and not f[-1]:
        f = f[:-1]
    return f


def _polymod(f: list[QuadElem], g: list[QuadElem]) -> list[QuadElem]:
    f = list(f)
    while len(f) >= len(g):
        c = f[-1] / g[-1]
        shift = len(f) - len(g)
        for i, gc in enumerate(g):
            f[shift + i] = f[shift + i] - c * gc
        f = _strip(f)
    return f


def _polygcd(f, g):
    f, g = _strip(list(f)), _strip(list(g))
    while g:
        f, g = g, _polymod(f, g)
    return f


def _polydiv(f, g):
    f = list(f)
    q = [QuadElem(g[0].d, 0)] * (len(f) - len(g) + 1)
    while len(f) >= len(g) and f:
        c = f[-1] / g[-1]
        shift = len(f) - len(g)
        q[shift] = c
        for i, gc in enumerate(g):
            f[shift + i] = f[shift + i] - c * gc
        f = _strip(f)
    return q


def squarefree_part(L: LocalCubic) -> list[QuadElem]:
    f = list(L.coeffs)
    df = [f[i] * i for i in range(1, len(f))]
    g = _polygcd(f, df)
    return f if len(g) <= 1 else _polydiv(f, g)


def weil_check(L: LocalCubic, tol: float = 1e-9) -> bool:
    """All roots have absolute value p, up to a relative tolerance."""
    sf = squarefree_part(L)
    roots = np.roots([complex(c) for c in reversed(sf)])
    return bool(np.all(np.abs(np.abs(roots) / L.p - 1) <= tol))


# -- comparison report --


@dataclass
class CompareReport:
    verdicts: dict[int, str] = field(default_factory=dict)
    details: dict[int, dict] = field(default_factory=dict)

    @property
    def summary(self) -> Counter:
        return Counter(self.verdicts.values())

    @property
    def exit_code(self) -> int:
        return 1 if self.summary.get("mismatch") else 0

    def table(self) -> str:
        primes = sorted(self.verdicts)
        lines = ["p".rjust(5) + "  modular".ljust(16) + "galois".ljust(28) + "verdict"]
        for p in primes:
            d = self.details[p]
            mod = "**" if d.get("modular") is None else str(d["modular"])
            gal = ", ".join(str(c) for c in d.get("galois", [])) or "-"
            lines.append(f"{p:5d}  {mod:<14}{gal:<28}{self.verdicts[p]}")
        s = self.summary
        lines.append(f"match {s.get('match', 0)}  mismatch {s.get('mismatch', 0)}  skipped {s.get('skipped', 0)}")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps(
            {"verdicts": {str(p): v for p, v in sorted(self.verdicts.items())},
             "summary": dict(self.summary)},
            sort_keys=True,
        )


def compare_report(modular, galois) -> CompareReport:
    """Per-prime verdicts.  ``modular`` is a list of (p, a_p) with a_p None at bad
    primes; ``galois`` is a list of CandidateSet (anything with .p and ``in``)."""
    gal = {g.p: g for g in galois}
    rep = CompareReport()
    for p, ap in modular:
        g = gal.get(p)
        cands = [complex(*c) for c in getattr(g, "candidates", [])] if g is not None else []
        rep.details[p] = {"modular": ap, "galois": cands}
        if ap is None or g is None:
            rep.verdicts[p] = "skipped"
        else:
            rep.verdicts[p] = "match" if ap in g else "mismatch"
    return rep
