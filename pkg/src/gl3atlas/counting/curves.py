"""Elliptic curves in long Weierstrass form and their Frobenius traces."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from ..arith.numbers import is_prime, prime_divisors, quadratic_character


class BadPrime(ValueError):
    pass


@dataclass(frozen=True)
class CurveSpec:
    label: str
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError(f"curve {self.label} is singular")

    @property
    def coeffs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def b_invariants(self) -> tuple[int, int, int, int]:
        a1, a2, a3, a4, a6 = self.coeffs
        b2 = a1 * a1 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3 * a3 + 4 * a6
        b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
        return b2, b4, b6, b8

    @property
    def discriminant(self) -> int:
        b2, b4, b6, b8 = self.b_invariants
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    def bad_primes(self) -> list[int]:
        return prime_divisors(self.conductor)


def _count_affine_brute(c: CurveSpec, p: int) -> int:
    a1, a2, a3, a4, a6 = c.coeffs
    return sum(
        1
        for x in range(p)
        for y in range(p)
        if (y * y + a1 * x * y + a3 * y - x**3 - a2 * x * x - a4 * x - a6) % p == 0
    )


def ec_ap(curve: CurveSpec, p: int) -> int:
    """a_p = p + 1 - #E(F_p) for a prime of good reduction.

    Odd p: complete the square, (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6,
    and sum the Legendre symbol of the right-hand side.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if curve.conductor % p == 0 or curve.discriminant % p == 0:
        raise BadPrime(f"{p} is a bad prime for {curve.label}")
    if p == 2:
        return p + 1 - (_count_affine_brute(curve, p) + 1)
    b2, b4, b6, _ = curve.b_invariants
    s = sum(quadratic_character((4 * x**3 + b2 * x * x + 2 * b4 * x + b6) % p, p) for x in range(p))
    return -s


def load_curves(path: str | Path) -> list[CurveSpec]:
    data = json.loads(Path(path).read_text())
    if data.get("schema") != 1:
        raise ValueError("unsupported curve schema")
    return [CurveSpec(c["label"], *[int(v) for v in c["coeffs"]], int(c["conductor"])) for c in data["curves"]]
