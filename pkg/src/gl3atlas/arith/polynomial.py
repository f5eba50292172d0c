"""Dense integer polynomials in one variable, coefficients stored low degree first."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise ValueError(f"non-integral coefficient {c}")
                c = c.numerator
            cs.append(int(c))
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[int, ...] = tuple(cs)

    @classmethod
    def x(cls) -> "IntPolynomial":
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def from_high(cls, coeffs: Sequence[int]) -> "IntPolynomial":
        """Build from coefficients listed from the leading term down."""
        return cls(reversed(list(coeffs)))

    @classmethod
    def from_flint(cls, poly) -> "IntPolynomial":
        return cls(int(c) for c in poly.coeffs())

    def to_flint(self):
        from flint import fmpz_poly

        return fmpz_poly(list(self.coeffs))

    # -- basic properties ---------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    # -- arithmetic ---------------------------------------------------
    @staticmethod
    def _lift(v) -> "IntPolynomial":
        if isinstance(v, IntPolynomial):
            return v
        if isinstance(v, int):
            return IntPolynomial((v,))
        return NotImplemented

    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        n = max(len(self), len(o))
        return IntPolynomial(self[i] + o[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if self.is_zero() or o.is_zero():
            return IntPolynomial()
        out = [0] * (len(self) + len(o) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out = IntPolynomial((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def divmod_monic(self, m: "IntPolynomial") -> tuple["IntPolynomial", "IntPolynomial"]:
        """Division with remainder by a monic polynomial (stays inside Z[X])."""
        if not m.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dm = m.degree
        if len(rem) - 1 < dm:
            return IntPolynomial(), IntPolynomial(rem)
        quo = [0] * (len(rem) - dm)
        for i in range(len(rem) - 1, dm - 1, -1):
            c = rem[i]
            if c:
                quo[i - dm] = c
                for j, b in enumerate(m.coeffs):
                    rem[i - dm + j] -= c * b
        return IntPolynomial(quo), IntPolynomial(rem[:dm])

    def __floordiv__(self, m):
        return self.divmod_monic(m)[0]

    def __mod__(self, m):
        return self.divmod_monic(m)[1]

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def __call__(self, v):
        acc = 0 * v if not isinstance(v, int) else 0
        for c in reversed(self.coeffs):
            acc = acc * v + c
        return acc

    # -- comparison / display -----------------------------------------
    def __eq__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if self.is_zero():
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("X" if i == 1 else f"X^{i}")
            mag = abs(c)
            body = f"{mag}" if (mag != 1 or i == 0) else ""
            if body and mono:
                body += "*"
            piece = body + mono
            if not terms:
                terms.append(("-" if c < 0 else "") + piece)
            else:
                terms.append(("- " if c < 0 else "+ ") + piece)
        return " ".join(terms)

