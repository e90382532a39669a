"""
Cyclotomic field arithmetic.

Exact arithmetic in Q(e), where e is a primitive cube root of unity.
Elements are stored as re + im*e with reduced rational components and the
rewrite rule e^2 = -1 - e.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Union

Rational = Union[int, Fraction]
Scalar = Union["CycNum", int, Fraction]


@dataclass(frozen=True, eq=False)
class CycNum:
    """
    Element re + im*e of Q(e).

    Components are Fractions, so they are always stored in lowest terms and
    equality is component-wise.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def coerce(cls, value: Scalar) -> CycNum:
        """Turn an int, Fraction or CycNum into a CycNum."""
        if isinstance(value, CycNum):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(Fraction(value), Fraction(0))
        raise TypeError(f"Cannot convert {type(value).__name__} to CycNum")

    # Arithmetic

    def __add__(self, other: Scalar) -> CycNum:
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return CycNum(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self) -> CycNum:
        return CycNum(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> CycNum:
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return CycNum(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: Scalar) -> CycNum:
        return CycNum.coerce(other) - self

    def __mul__(self, other: Scalar) -> CycNum:
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        # (a + b e)(c + d e) = ac + (ad + bc) e + bd e^2, with e^2 = -1 - e
        a, b, c, d = self.re, self.im, o.re, o.im
        bd = b * d
        return CycNum(a * c - bd, a * d + b * c - bd)

    __rmul__ = __mul__

    def conjugate(self) -> CycNum:
        """Image under e -> e^2: a + b e^2 = (a - b) - b e."""
        return CycNum(self.re - self.im, -self.im)

    def norm(self) -> Fraction:
        """Field norm a^2 - ab + b^2 (always rational, zero only for 0)."""
        a, b = self.re, self.im
        return a * a - a * b + b * b

    def inverse(self) -> CycNum:
        """
        Multiplicative inverse via the norm.

        Raises:
            ZeroDivisionError: If the element is zero
        """
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("CycNum division by zero")
        c = self.conjugate()
        return CycNum(c.re / n, c.im / n)

    def __truediv__(self, other: Scalar) -> CycNum:
        try:
            o = CycNum.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other: Scalar) -> CycNum:
        return CycNum.coerce(other) * self.inverse()

    def __pow__(self, k: int) -> CycNum:
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = ONE
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # Comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        if isinstance(other, CycNum):
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return self.re != 0 or self.im != 0

    def is_rational(self) -> bool:
        return self.im == 0

    # Text form

    def to_text(self) -> str:
        """
        Render in the polynomial grammar.

        Example:
            >>> CycNum(Fraction(-1, 2), 3).to_text()
            '(-1/2+3*e)'
            >>> CycNum(0, -1).to_text()
            '-e'
        """
        if self.is_rational():
            return str(self.re)
        if self.re == 0:
            return _e_multiple(self.im)
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{_e_multiple(abs(self.im))})"

    def __str__(self) -> str:
        return self.to_text()

    def __repr__(self) -> str:
        return f"CycNum({self.to_text()})"


def _e_multiple(im: Fraction) -> str:
    if im == 1:
        return "e"
    if im == -1:
        return "-e"
    return f"{im}*e"


ZERO = CycNum(0, 0)
ONE = CycNum(1, 0)
EPS = CycNum(0, 1)


def cyc_add(x: CycNum, y: CycNum) -> CycNum:
    return x + y


def cyc_mul(x: CycNum, y: CycNum) -> CycNum:
    return x * y


def cyc_neg(x: CycNum) -> CycNum:
    return -x


def cyc_inv(x: CycNum) -> CycNum:
    """
    Inverse of a nonzero element.

    Raises:
        ZeroDivisionError: If x is zero

    Example:
        >>> cyc_inv(EPS) == -1 - EPS
        True
    """
    return x.inverse()


def cube_roots_of_minus_one() -> List[CycNum]:
    """
    Return the three cube roots of -1 in the fixed order -1, -e, -e^2.

    Example:
        >>> [r.to_text() for r in cube_roots_of_minus_one()]
        ['-1', '-e', '(1+e)']
    """
    return [-ONE, -EPS, -(EPS * EPS)]


def primitive_cube_roots_of_unity() -> List[CycNum]:
    """Return e and e^2 = -1 - e, in that order."""
    return [EPS, EPS * EPS]


def is_cube_root_of_minus_one(x: CycNum) -> bool:
    return x**3 == -1


def is_primitive_cube_root_of_unity(x: CycNum) -> bool:
    return x**3 == 1 and x != 1
