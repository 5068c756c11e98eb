"""Exact Gaussian-rational scalars and functions on a finite point set.

A function on ``X = {0, ..., n-1}`` is a plain tuple of :class:`GaussRat`
values. Floats are rejected everywhere: every norm comparison downstream has
to be exact.
"""
from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction, "GaussRat"]


def _to_fraction(value) -> Fraction:
    if isinstance(value, bool):
        return Fraction(int(value))
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"inexact scalar rejected: {value!r} ({type(value).__name__})")


class GaussRat:
    """A complex number with rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re: object = 0, im: object = 0):
        if isinstance(re, GaussRat):
            if im:
                raise TypeError("cannot combine a GaussRat with an extra imaginary part")
            re, im = re.re, re.im
        object.__setattr__(self, "re", _to_fraction(re))
        object.__setattr__(self, "im", _to_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRat is immutable")

    @staticmethod
    def coerce(value: object) -> "GaussRat":
        return value if isinstance(value, GaussRat) else GaussRat(value)

    @staticmethod
    def _exact(re: Fraction, im: Fraction) -> "GaussRat":
        """Build from parts already known to be Fractions, skipping coercion."""
        out = object.__new__(GaussRat)
        object.__setattr__(out, "re", re)
        object.__setattr__(out, "im", im)
        return out

    def __add__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        if not o:
            return self
        if not self:
            return o
        return GaussRat._exact(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRat._exact(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussRat._exact(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        if not self or not o:
            return ZERO
        if not self.im and not o.im:
            return GaussRat._exact(self.re * o.re, _FRACTION_ZERO)
        return GaussRat._exact(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = GaussRat.coerce(other)
        d = o.abs2()
        if d == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        n = self * o.conjugate()
        return GaussRat(n.re / d, n.im / d)

    def conjugate(self) -> "GaussRat":
        return GaussRat._exact(self.re, -self.im)

    def abs2(self) -> Fraction:
        """Squared modulus, always an exact rational."""
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussRat.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({format_scalar(self)!r})"

    def __str__(self):
        return format_scalar(self)


_FRACTION_ZERO = Fraction(0)
ZERO = GaussRat(0)
ONE = GaussRat(1)

_GAUSS_RE = re.compile(
    r"^\s*(?P<re>[+-]?\d+(?:/\d+)?)?\s*(?:(?P<sign>[+-])\s*(?P<im>\d+(?:/\d+)?)?\s*\*?\s*i)?\s*$"
)
_PURE_IM_RE = re.compile(r"^\s*(?P<im>[+-]?\d*(?:/\d+)?)\s*\*?\s*i\s*$")


def parse_scalar(value: object) -> GaussRat:
    """Parse ``3``, ``"1/2"``, ``"1/2+3/4*i"``, ``"-i"`` and friends.

    JSON numbers are accepted only when they are integers.
    """
    if isinstance(value, GaussRat):
        return value
    if isinstance(value, float):
        raise TypeError(f"floating-point scalar rejected: {value!r}; write it as 'p/q'")
    if not isinstance(value, str):
        return GaussRat(value)
    text = value.replace(" ", "")
    m = _PURE_IM_RE.match(text)
    if m and "+" not in text[1:] and "-" not in text[1:]:
        im = m.group("im")
        if im in ("", "+"):
            im = "1"
        elif im == "-":
            im = "-1"
        return GaussRat(0, Fraction(im))
    m = _GAUSS_RE.match(text)
    if not m or not text:
        raise ValueError(f"cannot parse exact scalar {value!r}")
    re_part = Fraction(m.group("re")) if m.group("re") else Fraction(0)
    im_part = Fraction(0)
    if m.group("sign"):
        im_part = Fraction(m.group("im")) if m.group("im") else Fraction(1)
        if m.group("sign") == "-":
            im_part = -im_part
    return GaussRat(re_part, im_part)


def format_scalar(z: GaussRat) -> str:
    if not z.im:
        return str(z.re)
    im = z.im
    mag = str(abs(im))
    tail = "i" if abs(im) == 1 else f"{mag}*i"
    if not z.re:
        return ("-" if im < 0 else "") + tail
    return f"{z.re}{'-' if im < 0 else '+'}{tail}"


# -- functions on X --------------------------------------------------------

Function = tuple  # tuple[GaussRat, ...]


def fn(values: Iterable[object]) -> Function:
    return tuple(parse_scalar(v) for v in values)


def zero_fn(n: int) -> Function:
    return (ZERO,) * n


def one_fn(n: int) -> Function:
    return (ONE,) * n


def delta(n: int, point: int) -> Function:
    return tuple(ONE if z == point else ZERO for z in range(n))


def fn_add(f: Sequence[GaussRat], g: Sequence[GaussRat]) -> Function:
    if len(f) != len(g):
        raise ValueError(f"length mismatch: {len(f)} vs {len(g)}")
    return tuple(a + b for a, b in zip(f, g))


def fn_sub(f: Sequence[GaussRat], g: Sequence[GaussRat]) -> Function:
    if len(f) != len(g):
        raise ValueError(f"length mismatch: {len(f)} vs {len(g)}")
    return tuple(a - b for a, b in zip(f, g))


def fn_mul(f: Sequence[GaussRat], g: Sequence[GaussRat]) -> Function:
    if len(f) != len(g):
        raise ValueError(f"length mismatch: {len(f)} vs {len(g)}")
    return tuple(a * b for a, b in zip(f, g))


def fn_scale(c: Number, f: Sequence[GaussRat]) -> Function:
    c = GaussRat.coerce(c)
    return tuple(c * a for a in f)


def fn_conj(f: Sequence[GaussRat]) -> Function:
    return tuple(a.conjugate() for a in f)


def fn_is_zero(f: Sequence[GaussRat]) -> bool:
    return not any(f)


def fn_max_abs2(f: Sequence[GaussRat]) -> Fraction:
    return max((a.abs2() for a in f), default=Fraction(0))


def fn_support(f: Sequence[GaussRat]) -> frozenset:
    return frozenset(z for z, a in enumerate(f) if a)


def format_fn(f: Sequence[GaussRat]) -> list[str]:
    return [format_scalar(a) for a in f]
