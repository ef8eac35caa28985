"""Exact scalars: rationals and polynomials in a symbolic small epsilon.

Rationals are :class:`fractions.Fraction` (arbitrary precision, always in
lowest terms).  :class:`LexValue` holds ``c0 + c1*eps + c2*eps**2 + ...``
with a fixed number of coefficients and compares by the first coefficient
that differs, which is exactly how such polynomials compare for every
sufficiently small ``eps > 0``.

LexValue interoperates with plain numbers: a number behaves like a
constant polynomial, so code that only adds, subtracts, scales and
compares works unchanged on either kind of value.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Union

Scalar = Union[Fraction, int]

_RATIONAL_RE = re.compile(r"[+-]?\d+(?:/\d+)?")


def parse_rational(text: str) -> Fraction:
    """Parse ``-5``, ``3/2``, ``+7``.  Decimals and exponents are rejected."""
    token = text.strip()
    if not _RATIONAL_RE.fullmatch(token):
        raise ValueError(f"not a rational literal: {text!r}")
    value = Fraction(token)  # raises ZeroDivisionError on "/0"
    return value


def format_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


_ZERO = Fraction(0)


class LexValue:
    """Polynomial in epsilon ordered lexicographically by coefficient."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar]) -> None:
        coeffs = tuple(Fraction(c) for c in coeffs)
        if not coeffs:
            raise ValueError("LexValue needs at least a constant term")
        self.coeffs = coeffs

    @classmethod
    def constant(cls, value: Scalar, length: int) -> LexValue:
        return cls((value,) + (0,) * (length - 1))

    @classmethod
    def monomial(cls, power: int, coeff: Scalar, length: int) -> LexValue:
        coeffs = [0] * length
        coeffs[power] = coeff
        return cls(coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def const(self) -> Fraction:
        return self.coeffs[0]

    def sign(self) -> int:
        for c in self.coeffs:
            if c:
                return 1 if c > 0 else -1
        return 0

    def evaluate(self, eps):
        """Value at a concrete ``eps`` (exact when ``eps`` is rational)."""
        total = 0
        for c in reversed(self.coeffs):
            total = total * eps + c
        return total

    @classmethod
    def _raw(cls, coeffs: tuple) -> LexValue:
        # Trusted constructor: coeffs is already a tuple of Fractions.
        v = object.__new__(cls)
        v.coeffs = coeffs
        return v

    def _coerce(self, other) -> tuple[Fraction, ...] | None:
        if isinstance(other, LexValue):
            if len(other.coeffs) != len(self.coeffs):
                raise ValueError(
                    f"LexValue length mismatch: {len(self.coeffs)} vs {len(other.coeffs)}"
                )
            return other.coeffs
        if isinstance(other, Rational):
            return (Fraction(other),) + (_ZERO,) * (len(self.coeffs) - 1)
        return None

    def __add__(self, other):
        if isinstance(other, Rational):
            if not other:
                return self
            return LexValue._raw((self.coeffs[0] + other,) + self.coeffs[1:])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LexValue._raw(tuple(a + b if b else a for a, b in zip(self.coeffs, o)))

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Rational):
            return self + (-other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return LexValue._raw(tuple(a - b if b else a for a, b in zip(self.coeffs, o)))

    def __rsub__(self, other):
        if isinstance(other, Rational):
            return (-self) + other
        return NotImplemented

    def __neg__(self) -> LexValue:
        return LexValue._raw(tuple(-a if a else a for a in self.coeffs))

    def __mul__(self, other):
        # Only scaling by a rational; products of two polynomials never occur.
        if isinstance(other, Rational):
            if other == 1:
                return self
            return LexValue._raw(tuple(a * other if a else _ZERO for a in self.coeffs))
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if other == 0:
                raise ZeroDivisionError("LexValue divided by zero")
            return LexValue._raw(tuple(a / other if a else a for a in self.coeffs))
        return NotImplemented

    def _cmp(self, other) -> int | None:
        o = self._coerce(other)
        if o is None:
            return None
        for a, b in zip(self.coeffs, o):
            if a != b:
                return -1 if a < b else 1
        return 0

    def __eq__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r == 0

    def __lt__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r < 0

    def __le__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r <= 0

    def __gt__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r > 0

    def __ge__(self, other):
        r = self._cmp(other)
        return NotImplemented if r is None else r >= 0

    def __hash__(self) -> int:
        if not any(self.coeffs[1:]):
            return hash(self.coeffs[0])
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"LexValue({', '.join(format_rational(c) for c in self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not c and (k or any(self.coeffs)):
                continue
            if k == 0:
                terms.append(format_rational(c))
            else:
                mag = "" if abs(c) == 1 else format_rational(abs(c)) + "*"
                power = "eps" if k == 1 else f"eps^{k}"
                terms.append(("- " if c < 0 else "+ ") + mag + power)
        text = " ".join(terms)
        return text[2:] if text.startswith("+ ") else text


def lex_sign(v: LexValue | Scalar) -> int:
    """Sign of the first nonzero coefficient; 0 for the zero polynomial."""
    if isinstance(v, LexValue):
        return v.sign()
    return (v > 0) - (v < 0)


def lex_div_scalar(v: LexValue, s: Scalar) -> LexValue:
    return v / Fraction(s)


def constant_part(v: LexValue | Scalar) -> Fraction:
    return v.const if isinstance(v, LexValue) else Fraction(v)
