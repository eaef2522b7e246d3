"""Exact scalars: rationals (``fractions.Fraction``) and the field Q(sqrt 3).

Rationals are plain :class:`~fractions.Fraction` objects.  Elements of the
quadratic extension are :class:`QSqrt3` instances; arithmetic between a
rational and a ``QSqrt3`` promotes the rational, so the result of any binary
operation lives in the join of the operand fields.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational
from typing import Union

__all__ = ["QSqrt3", "Scalar", "SQRT3", "as_scalar", "field_of", "format_scalar"]


class QSqrt3:
    """``a + b*sqrt(3)`` with rational ``a`` and ``b``.

    Equality is componentwise, which is sound because sqrt(3) is
    irrational.  Instances are immutable and hashable; a ``QSqrt3`` with
    ``b == 0`` compares equal (and hashes equal) to the rational ``a``.
    """

    __slots__ = ("_a", "_b")

    def __init__(self, a=0, b=0):
        object.__setattr__(self, "_a", Fraction(a))
        object.__setattr__(self, "_b", Fraction(b))

    def __setattr__(self, name, value):
        raise AttributeError("QSqrt3 is immutable")

    @property
    def rational(self) -> Fraction:
        return self._a

    @property
    def surd(self) -> Fraction:
        return self._b

    @staticmethod
    def _coerce(other):
        if isinstance(other, QSqrt3):
            return other
        if isinstance(other, (int, Rational)):
            return QSqrt3(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self._a + o._a, self._b + o._b)

    __radd__ = __add__

    def __neg__(self):
        return QSqrt3(-self._a, -self._b)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self._a - o._a, self._b - o._b)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QSqrt3(self._a * o._a + 3 * self._b * o._b,
                      self._a * o._b + self._b * o._a)

    __rmul__ = __mul__

    def conjugate(self) -> "QSqrt3":
        return QSqrt3(self._a, -self._b)

    def norm(self) -> Fraction:
        return self._a * self._a - 3 * self._b * self._b

    def inverse(self) -> "QSqrt3":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt 3)")
        return QSqrt3(self._a / n, -self._b / n)

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

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out = QSqrt3(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self._a == o._a and self._b == o._b

    def __hash__(self):
        if self._b == 0:
            return hash(self._a)
        return hash((self._a, self._b))

    def __repr__(self):
        return f"QSqrt3({self._a}, {self._b})"

    def __str__(self):
        return format_scalar(self)


Scalar = Union[Fraction, QSqrt3]

SQRT3 = QSqrt3(0, 1)


def as_scalar(x) -> Scalar:
    """Normalise ``int``/``Fraction``/``QSqrt3`` input to an exact scalar."""
    if isinstance(x, QSqrt3):
        return x
    if isinstance(x, (int, Rational)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact scalar: {x!r}")


def field_of(x) -> str:
    return "Q(sqrt3)" if isinstance(x, QSqrt3) else "Q"


def format_scalar(x) -> str:
    """Render as ``"p/q"`` (or ``"p"``) for rationals, ``"a+b*sqrt(3)"`` otherwise."""
    if isinstance(x, QSqrt3):
        a, b = x.rational, x.surd
        if b == 0:
            return str(a)
        sb = f"{b}*sqrt(3)"
        if a == 0:
            return sb
        return f"{a}{'' if b < 0 else '+'}{sb}"
    return str(Fraction(x))
