"""Dirichlet characters of prime modulus with exact root-of-unity values."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .numbers import discrete_log, is_prime, primitive_root
from .quadratic import QuadElem, root_of_unity


@dataclass(frozen=True)
class DirichletChar:
    """Character mod a prime m sending the smallest primitive root g to zeta_order**exponent."""

    modulus: int
    order: int
    exponent: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError("only prime moduli are supported")
        if self.order not in (1, 2, 3, 4, 6):
            raise ValueError(f"order {self.order} has no exact quadratic representation")
        if (self.modulus - 1) % self.order:
            raise ValueError(f"no character of order {self.order} modulo {self.modulus}")
        object.__setattr__(self, "exponent", self.exponent % self.order)

    @property
    def generator(self) -> int:
        return primitive_root(self.modulus)

    @property
    def field_tag(self) -> int:
        return -1 if self.order == 4 else -3

    def __call__(self, n: int) -> QuadElem:
        return char_value(self, n)

    def __mul__(self, other: "DirichletChar") -> "DirichletChar":
        if other.modulus != self.modulus:
            raise ValueError("characters have different moduli")
        order = self.order * other.order // gcd(self.order, other.order)
        if order not in (1, 2, 3, 4, 6):
            raise ValueError("product order is not supported")
        e = self.exponent * (order // self.order) + other.exponent * (order // other.order)
        return DirichletChar(self.modulus, order, e)

    def __pow__(self, k: int) -> "DirichletChar":
        return DirichletChar(self.modulus, self.order, self.exponent * k)


def char_value(chi: DirichletChar, n: int) -> QuadElem:
    m = chi.modulus
    if n % m == 0:
        return QuadElem(chi.field_tag, 0)
    k = discrete_log(n % m, chi.generator, m)
    return root_of_unity(chi.order, chi.exponent * k)


def characters_mod(m: int, order_dividing: int) -> list[DirichletChar]:
    """All characters mod m whose order divides `order_dividing`, trivial first."""
    return [DirichletChar(m, order_dividing, e) for e in range(order_dividing)]
