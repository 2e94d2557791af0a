"""Exact arithmetic in the field Q(sqrt 5), written in the golden-ratio basis.

Every element is stored as ``a + b*phi`` with rational ``a`` and ``b`` and
``phi = (1 + sqrt 5) / 2``, so ``phi**2 == phi + 1``.  The reflection
representations of H3 and H4 live over ``Z[phi]``; crystallographic types
only ever use ``b == 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Number = Union[int, Fraction, "Golden"]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


@dataclass(frozen=True, slots=True)
class Golden:
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "a", _frac(self.a))
        object.__setattr__(self, "b", _frac(self.b))

    @classmethod
    def coerce(cls, x) -> "Golden":
        if isinstance(x, Golden):
            return x
        return cls(_frac(x), Fraction(0))

    @classmethod
    def phi(cls) -> "Golden":
        return cls(0, 1)

    def __add__(self, other):
        o = Golden.coerce(other)
        return Golden(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Golden(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-Golden.coerce(other))

    def __rsub__(self, other):
        return Golden.coerce(other) - self

    def __mul__(self, other):
        o = Golden.coerce(other)
        # (a + b phi)(c + d phi) = ac + bd + (ad + bc + bd) phi
        bd = self.b * o.b
        return Golden(self.a * o.a + bd, self.a * o.b + self.b * o.a + bd)

    __rmul__ = __mul__

    def conjugate(self) -> "Golden":
        """Galois conjugate: phi -> 1 - phi."""
        return Golden(self.a + self.b, -self.b)

    def norm(self) -> Fraction:
        # (a + b phi)(a + b - b phi) = a^2 + ab - b^2
        return self.a * self.a + self.a * self.b - self.b * self.b

    def inverse(self) -> "Golden":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt 5)")
        c = self.conjugate()
        return Golden(c.a / n, c.b / n)

    def __truediv__(self, other):
        return self * Golden.coerce(other).inverse()

    def __rtruediv__(self, other):
        return Golden.coerce(other) * self.inverse()

    def sign(self) -> int:
        """Exact sign of the real number ``a + b*phi``."""
        # a + b phi = x + y sqrt5 with x = a + b/2, y = b/2
        x = self.a + self.b / 2
        y = self.b / 2
        sx = (x > 0) - (x < 0)
        sy = (y > 0) - (y < 0)
        if sy == 0:
            return sx
        if sx == 0 or sx == sy:
            return sy
        # opposite signs: compare x^2 against 5 y^2
        d = x * x - 5 * y * y
        return sx if d > 0 else (sy if d < 0 else 0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, Golden):
            return self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        return hash((self.a, self.b))

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __float__(self):
        return float(self.a) + float(self.b) * (1 + math.sqrt(5)) / 2

    def is_integral(self) -> bool:
        return self.a.denominator == 1 and self.b.denominator == 1

    def key(self) -> tuple[int, int, int, int]:
        """Normalized rational representation, used for canonical hashing."""
        return (self.a.numerator, self.a.denominator, self.b.numerator, self.b.denominator)

    def __repr__(self):
        if self.b == 0:
            return f"Golden({self.a})"
        return f"Golden({self.a} + {self.b}*phi)"


PHI = Golden(0, 1)


def two_cos_pi_over(m: int) -> Golden:
    """Return ``2*cos(pi/m)`` exactly for the orders that occur in Q(sqrt 5).

    ``m = 4`` and ``m = 6`` give sqrt 2 and sqrt 3, which are not in the field;
    those bonds are handled with non-symmetric Cartan entries instead.
    """
    if m == 2:
        return Golden(0)
    if m == 3:
        return Golden(1)
    if m == 5:
        return PHI
    raise ValueError(f"2cos(pi/{m}) is not an element of Q(sqrt 5)")
