"""Exact rationals and p-adic valuations.

Every log-scale quantity in the package is either a ``Fraction`` or the
symbol ``INF``.  Radii never appear as reals: a radius ``p**(-s)`` is
stored as its log-radius ``s``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from numbers import Rational


class InputError(ValueError):
    """Malformed or out-of-contract input."""


class DegenerateInputError(ValueError):
    """Input is well formed but degenerate (zero polynomial, constant map)."""


class _Infinity:
    """Signed infinity for valuations.  ``INF`` is the top element."""

    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "INF" if self.sign > 0 else "-INF"

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def __add__(self, other):
        if isinstance(other, _Infinity) and other.sign != self.sign:
            raise ArithmeticError("INF - INF is undefined")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, _Infinity):
            return INF if self.sign == other.sign else NEG_INF
        if other == 0:
            raise ArithmeticError("0 * INF is undefined")
        return self if other > 0 else -self

    __rmul__ = __mul__

    def _key(self, other):
        if isinstance(other, _Infinity):
            return other.sign
        if isinstance(other, (int, Rational)):
            return 0
        return None

    def __eq__(self, other):
        k = self._key(other)
        return k is not None and k == self.sign

    def __hash__(self):
        return hash(("inf", self.sign))

    def __lt__(self, other):
        k = self._key(other)
        if k is None:
            return NotImplemented
        return self.sign < k

    def __le__(self, other):
        k = self._key(other)
        if k is None:
            return NotImplemented
        return self.sign <= k

    def __gt__(self, other):
        k = self._key(other)
        if k is None:
            return NotImplemented
        return self.sign > k

    def __ge__(self, other):
        k = self._key(other)
        if k is None:
            return NotImplemented
        return self.sign >= k

    def __reduce__(self):
        return (_infinity, (self.sign,))


def _infinity(sign):
    return INF if sign > 0 else NEG_INF


INF = _Infinity(1)
NEG_INF = _Infinity(-1)


class _PointAtInfinity:
    """The point at infinity of P^1, used as a disc or map center."""

    __slots__ = ()

    def __repr__(self):
        return "INFTY"

    def __reduce__(self):
        return "INFTY"


INFTY = _PointAtInfinity()


def is_inf(x):
    return isinstance(x, _Infinity)


@lru_cache(maxsize=4096)
def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def check_prime(p):
    if isinstance(p, bool) or not isinstance(p, int) or not is_prime(p):
        raise InputError(f"p must be a prime integer, got {p!r}")
    return p


def _int_val(n, p):
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def padic_val(x, p):
    """Return the p-adic valuation of the rational ``x`` (``INF`` for 0).

    >>> padic_val(50, 5), padic_val(Fraction(3, 25), 5), padic_val(0, 7)
    (2, -2, INF)
    """
    check_prime(p)
    x = Fraction(x)
    if x == 0:
        return INF
    return _int_val(x.numerator, p) - _int_val(x.denominator, p)


def unit_part(x, p):
    """Return ``(u, v)`` with ``x = u * p**v`` and ``u`` a p-adic unit."""
    v = padic_val(x, p)
    if is_inf(v):
        raise DegenerateInputError("zero has no unit part")
    return Fraction(x) / Fraction(p) ** v, v


def residue(x, p):
    """Reduction mod p of a p-integral rational, as an int in ``range(p)``."""
    x = Fraction(x)
    if x.denominator % p == 0:
        raise InputError(f"{x} is not p-integral for p={p}")
    return x.numerator * pow(x.denominator, -1, p) % p


def unit_residue(x, p):
    """Residue of the unit part of a nonzero rational."""
    u, _ = unit_part(x, p)
    return residue(u, p)


def valq_affine(v, i, s):
    """Evaluate one polygon term ``v + i*s``; ``INF`` absorbs."""
    if is_inf(v):
        return v
    return Fraction(v) + i * Fraction(s)


_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^[+-]?\d+/\d+$")


def parse_q(value, field="value"):
    """Parse an exact rational from an int or an ``"a"`` / ``"a/b"`` string.

    Floats and decimal strings are rejected: the engine has no inexact mode.
    """
    if isinstance(value, bool):
        raise InputError(f"{field}: expected a rational, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        s = value.strip()
        if _INT_RE.match(s):
            return Fraction(int(s))
        if _FRAC_RE.match(s):
            num, den = s.split("/")
            if int(den) == 0:
                raise InputError(f"{field}: zero denominator in {value!r}")
            return Fraction(int(num), int(den))
        raise InputError(f"{field}: not an exact rational: {value!r}")
    raise InputError(f"{field}: floating point or non-rational literal {value!r} rejected")


def parse_valq(value, field="value"):
    if isinstance(value, str) and value.strip() in ("inf", "+inf"):
        return INF
    if isinstance(value, str) and value.strip() == "-inf":
        return NEG_INF
    return parse_q(value, field)


def parse_center(value, field="center"):
    """A center is a rational or the point at infinity (``"inf"``)."""
    if value is INFTY:
        return INFTY
    if isinstance(value, str) and value.strip() == "inf":
        return INFTY
    return parse_q(value, field)


def format_q(x):
    """Serialize a rational, INF, or INFTY as a string."""
    if x is INFTY or x is INF:
        return "inf"
    if x is NEG_INF:
        return "-inf"
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"
