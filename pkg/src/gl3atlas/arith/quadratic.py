"""Exact elements x + y*sqrt(d) of a quadratic field Q(sqrt(d))."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .numbers import is_squarefree


def _rat(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"expected a rational number, got {type(v).__name__}")


@dataclass(frozen=True, eq=False)
class QuadElem:
    """x + y*sqrt(d) with rational x, y and square-free d not in {0, 1}.

    Mixed arithmetic with ints and Fractions is supported; mixing two
    different discriminants raises ValueError.
    """

    d: int
    x: Fraction
    y: Fraction = Fraction(0)

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d in (0, 1) or not is_squarefree(self.d):
            raise ValueError(f"discriminant tag must be square-free and not 0, 1: {self.d!r}")
        object.__setattr__(self, "x", _rat(self.x))
        object.__setattr__(self, "y", _rat(self.y))

    # -- constructors -------------------------------------------------
    @classmethod
    def gaussian(cls, re, im=0) -> "QuadElem":
        return cls(-1, re, im)

    @classmethod
    def rational(cls, v, d: int) -> "QuadElem":
        return cls(d, v, 0)

    # -- coercion -----------------------------------------------------
    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise ValueError(f"cannot mix Q(sqrt({self.d})) and Q(sqrt({other.d}))")
            return other
        if isinstance(other, (int, Rational)):
            return QuadElem(self.d, other, 0)
        return NotImplemented

    # -- ring operations ----------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.d, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.d, -self.x, -self.y)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(self.d, self.x - o.x, self.y - o.y)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElem(
            self.d,
            self.x * o.x + self.d * self.y * o.y,
            self.x * o.y + self.y * o.x,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in a quadratic field")
        return QuadElem(self.d, self.x / n, -self.y / n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        out = QuadElem(self.d, 1, 0)
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    # -- field structure ----------------------------------------------
    def conjugate(self) -> "QuadElem":
        return QuadElem(self.d, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_rational(self) -> bool:
        return self.y == 0

    def is_integral(self) -> bool:
        """True if the element is an algebraic integer."""
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def minpoly_coeffs(self) -> tuple[Fraction, ...]:
        """Coefficients (low degree first) of the monic minimal polynomial over Q."""
        if self.is_rational():
            return (-self.x, Fraction(1))
        return (self.norm(), -self.trace(), Fraction(1))

    def __complex__(self) -> complex:
        if self.d > 0:
            return complex(float(self.x) + float(self.y) * self.d**0.5, 0.0)
        return complex(float(self.x), float(self.y) * (-self.d) ** 0.5)

    # -- comparison / hashing -----------------------------------------
    def __eq__(self, other):
        if isinstance(other, QuadElem):
            return self.d == other.d and self.x == other.x and self.y == other.y
        if isinstance(other, (int, Rational)):
            return self.y == 0 and self.x == other
        return NotImplemented

    def __hash__(self):
        if self.y == 0:
            return hash(self.x)
        return hash((self.d, self.x, self.y))

    def __bool__(self):
        return bool(self.x) or bool(self.y)

    def __repr__(self):
        return f"QuadElem({self})"

    def __str__(self):
        root = "i" if self.d == -1 else f"sqrt({self.d})"
        if self.y == 0:
            return str(self.x)
        ys = "" if abs(self.y) == 1 else f"{abs(self.y)}*"
        yterm = f"{ys}{root}"
        if self.x == 0:
            return f"-{yterm}" if self.y < 0 else yterm
        sign = "-" if self.y < 0 else "+"
        return f"{self.x}{sign}{yterm}"


I = QuadElem(-1, 0, 1)
OMEGA = QuadElem(-3, Fraction(-1, 2), Fraction(1, 2))  # root of X^2 + X + 1


def root_of_unity(order: int, power: int = 1) -> QuadElem:
    """exp(2*pi*i*power/order) for order in {1, 2, 3, 4, 6}, exactly.

    Orders 1, 2, 3 and 6 live in Q(sqrt(-3)); order 4 lives in Q(i).
    """
    if order == 4:
        return I ** (power % 4)
    if order in (1, 2, 3, 6):
        zeta6 = -(OMEGA**2)  # (1 + sqrt(-3))/2, a primitive 6th root
        return zeta6 ** ((power * (6 // order)) % 6)
    raise ValueError(f"roots of unity of order {order} are not quadratic")
