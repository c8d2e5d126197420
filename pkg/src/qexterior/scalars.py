"""Exact base scalars: rationals (stdlib Fraction) and Gaussian rationals.

Every number in the engine is exact.  Plain rationals are represented by
``fractions.Fraction``; the complexified theory uses :class:`GRat`, a
Gaussian rational ``re + im*i`` with Fraction parts.
"""

from __future__ import annotations

from fractions import Fraction

RatLike = (int, Fraction)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot coerce {x!r} to a rational")


class GRat:
    """Gaussian rational ``re + im*i``; conjugation is an involution."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = as_fraction(re)
        self.im = as_fraction(im)

    @classmethod
    def coerce(cls, x) -> "GRat":
        if isinstance(x, GRat):
            return x
        return cls(as_fraction(x))

    def conjugate(self) -> "GRat":
        return GRat(self.re, -self.im)

    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        if isinstance(other, GRat):
            return self.re == other.re and self.im == other.im
        if isinstance(other, RatLike):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __add__(self, other):
        if isinstance(other, RatLike):
            return GRat(self.re + other, self.im)
        if isinstance(other, GRat):
            return GRat(self.re + other.re, self.im + other.im)
        return NotImplemented

    __radd__ = __add__

    def __neg__(self):
        return GRat(-self.re, -self.im)

    def __sub__(self, other):
        if isinstance(other, RatLike):
            return GRat(self.re - other, self.im)
        if isinstance(other, GRat):
            return GRat(self.re - other.re, self.im - other.im)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        if isinstance(other, RatLike):
            return GRat(self.re * other, self.im * other)
        if isinstance(other, GRat):
            return GRat(self.re * other.re - self.im * other.im,
                        self.re * other.im + self.im * other.re)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, RatLike):
            return GRat(self.re / other, self.im / other)
        if isinstance(other, GRat):
            n = other.re * other.re + other.im * other.im
            if n == 0:
                raise ZeroDivisionError("division by zero Gaussian rational")
            return GRat((self.re * other.re + self.im * other.im) / n,
                        (self.im * other.re - self.re * other.im) / n)
        return NotImplemented

    def __rtruediv__(self, other):
        return GRat.coerce(other) / self

    def __pow__(self, k: int):
        if k < 0:
            return GRat(1) / self ** (-k)
        out = GRat(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __repr__(self):
        return f"GRat({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


I = GRat(0, 1)


def conjugate_scalar(x):
    """Complex conjugation on any base scalar (identity on rationals)."""
    if isinstance(x, GRat):
        return x.conjugate()
    return x


def scalar_to_json(x):
    """Serialize a base scalar: rationals as 'p/q', Gaussian as {re, im}."""
    if isinstance(x, GRat):
        return {"re": str(x.re), "im": str(x.im)}
    return str(as_fraction(x))


def scalar_from_json(obj):
    if isinstance(obj, dict):
        return GRat(Fraction(obj["re"]), Fraction(obj["im"]))
    return Fraction(obj)
