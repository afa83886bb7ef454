"""Exact scalar coefficients: integers, rationals and Gaussian rationals.

Polynomial coefficients are plain ``int`` whenever possible (the fast common
case), ``fractions.Fraction`` when a denominator appears, and
:class:`GaussianRational` only when an imaginary part is present.
``normalize_scalar`` demotes values back down this chain after arithmetic.
"""

from __future__ import annotations

from fractions import Fraction

Rat = (int, Fraction)


class GaussianRational:
    """A number a + b*i with rational a, b, supporting mixed arithmetic
    with int and Fraction."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __eq__(self, other):
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, Rat):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(self.re + other.re, self.im + other.im)
        if isinstance(other, Rat):
            return GaussianRational(self.re + other, self.im)
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, GaussianRational)
                       else GaussianRational(-other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, GaussianRational):
            return GaussianRational(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re)
        if isinstance(other, Rat):
            return GaussianRational(self.re * other, self.im * other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rat):
            return GaussianRational(self.re / other, self.im / other)
        if isinstance(other, GaussianRational):
            n = other.re * other.re + other.im * other.im
            return GaussianRational(
                (self.re * other.re + self.im * other.im) / n,
                (self.im * other.re - self.re * other.im) / n)
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, Rat):
            return GaussianRational(other) / self
        return NotImplemented

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))


def normalize_scalar(c):
    """Demote to the simplest exact type: GaussianRational -> Fraction -> int."""
    if isinstance(c, GaussianRational):
        if c.im == 0:
            c = c.re
        else:
            return c
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


def conj_scalar(c):
    if isinstance(c, GaussianRational):
        return c.conjugate()
    return c


def is_gaussian(c) -> bool:
    return isinstance(c, GaussianRational) and c.im != 0


def scalar_to_complex(c) -> complex:
    if isinstance(c, GaussianRational):
        return complex(c)
    if isinstance(c, complex):
        return c
    return complex(float(c), 0.0)


def scalar_to_str(c) -> str:
    """Exact text form: '3', '-1/2', '1/2+1/3i'."""
    c = normalize_scalar(c)
    if isinstance(c, GaussianRational):
        re, im = c.re, c.im
        s = str(Fraction(re)) if re else ""
        t = f"{Fraction(im)}i"
        if im > 0 and s:
            return f"{s}+{t}"
        return f"{s}{t}" if s else t
    return str(c)


def parse_rational_pair(value):
    """Parse a JSON entry into an exact scalar.

    Accepted forms: integer, "num/den" string, or [re, im] with each part an
    integer or "num/den" string.
    """
    def part(x):
        if isinstance(x, bool):
            raise ValueError(f"not a rational: {x!r}")
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise ValueError(f"not a rational: {x!r}")

    if isinstance(value, (list, tuple)):
        if len(value) != 2:
            raise ValueError(f"expected [re, im], got {value!r}")
        re, im = part(value[0]), part(value[1])
        if im:
            return GaussianRational(re, im)
        return normalize_scalar(re)
    return normalize_scalar(part(value))
