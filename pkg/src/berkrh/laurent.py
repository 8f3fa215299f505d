"""Laurent polynomials and reduced rational maps over Q.

A ``LaurentPoly`` is a sparse map ``exponent -> nonzero Fraction``.  A
``RationalMap`` is a pair of polynomials kept gcd-reduced, with the
denominator normalized to leading coefficient 1, so that equal maps have
equal representations.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb

from .exactval import INFTY, DegenerateInputError, InputError, format_q, parse_q


class LaurentPoly:
    """Immutable sparse Laurent polynomial with exact rational coefficients.

    INPUT:

    - ``coeffs`` -- mapping from integer exponent to a rational; zero
      entries are dropped.

    EXAMPLES::

        >>> f = LaurentPoly({5: 1, 1: -1})
        >>> f.ord_low, f.ord_high
        (1, 5)
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        c = {}
        for e, a in (coeffs or {}).items():
            if isinstance(e, bool) or not isinstance(e, int):
                raise InputError(f"exponent must be an integer, got {e!r}")
            a = Fraction(a)
            if a != 0:
                c[e] = a
        self._c = dict(sorted(c.items()))
        self._hash = None

    # construction helpers

    @classmethod
    def monomial(cls, e, a=1):
        return cls({e: a})

    @classmethod
    def constant(cls, a):
        return cls({0: a})

    @classmethod
    def from_coeff_list(cls, coeffs):
        """Build from ``[c_0, c_1, ...]`` (lowest degree first)."""
        return cls({i: a for i, a in enumerate(coeffs)})

    @classmethod
    def from_json(cls, obj, field="poly"):
        if not isinstance(obj, dict):
            raise InputError(f"{field}: expected an object mapping exponents to coefficients")
        c = {}
        for k, v in obj.items():
            try:
                e = int(k)
            except (TypeError, ValueError):
                raise InputError(f"{field}: exponent {k!r} is not an integer") from None
            c[e] = parse_q(v, f"{field}[{k}]")
        return cls(c)

    def to_json(self):
        return {str(e): format_q(a) for e, a in self._c.items()}

    # basic access

    def items(self):
        return self._c.items()

    def exponents(self):
        return list(self._c)

    def coeff(self, e):
        return self._c.get(e, Fraction(0))

    def is_zero(self):
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __len__(self):
        return len(self._c)

    @property
    def ord_low(self):
        if not self._c:
            raise DegenerateInputError("zero polynomial has no order")
        return next(iter(self._c))

    @property
    def ord_high(self):
        if not self._c:
            raise DegenerateInputError("zero polynomial has no degree")
        return next(reversed(self._c))

    @property
    def degree(self):
        return self.ord_high

    def is_polynomial(self):
        return not self._c or self.ord_low >= 0

    def leading_coeff(self):
        return self._c[self.ord_high]

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == LaurentPoly.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._c.items()))
        return self._hash

    def __repr__(self):
        if not self._c:
            return "0"
        out = ""
        for e, a in reversed(self._c.items()):
            sign = "-" if a < 0 else "+"
            a = abs(a)
            if e == 0:
                term = format_q(a)
            else:
                mono = "T" if e == 1 else f"T^{e}"
                term = mono if a == 1 else f"{format_q(a)}*{mono}"
            out += (f"-{term}" if sign == "-" else term) if not out else f" {sign} {term}"
        return out

    # arithmetic

    def __add__(self, other):
        other = _lift(other)
        c = dict(self._c)
        for e, a in other._c.items():
            c[e] = c.get(e, 0) + a
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -a for e, a in self._c.items()})

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        c = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                c[e1 + e2] = c.get(e1 + e2, 0) + a1 * a2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise InputError("negative powers are not Laurent polynomials in general")
        out = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, a):
        return LaurentPoly({e: a * c for e, c in self._c.items()})

    def shift_exponents(self, k):
        """Multiply by ``T**k``."""
        return LaurentPoly({e + k: a for e, a in self._c.items()})

    def __call__(self, x):
        x = Fraction(x)
        if x == 0 and not self.is_polynomial():
            raise ZeroDivisionError("negative exponent evaluated at 0")
        return sum((a * x**e for e, a in self._c.items()), Fraction(0))


def _lift(x):
    if isinstance(x, LaurentPoly):
        return x
    return LaurentPoly.constant(x)


T = LaurentPoly.monomial(1)


def derivative(f):
    """Termwise derivative: ``T^5 - T -> 5T^4 - 1``."""
    return LaurentPoly({e - 1: e * a for e, a in f.items() if e != 0})


def taylor_shift(f, a):
    """Return ``g`` with ``g(T) = f(a + T)``.

    Only defined for polynomials; shift rational maps componentwise.
    """
    if not f.is_polynomial():
        raise InputError("taylor_shift needs nonnegative exponents")
    a = Fraction(a)
    if a == 0 or f.is_zero():
        return f
    c = {}
    for e, coef in f.items():
        apow = Fraction(1)
        # (a + T)^e = sum_k C(e,k) a^(e-k) T^k
        for k in range(e, -1, -1):
            c[k] = c.get(k, 0) + coef * comb(e, k) * apow
            apow *= a
    return LaurentPoly(c)


def invert_coordinate(f):
    """Apply ``T -> 1/T``: exponent ``i`` becomes ``-i``."""
    return LaurentPoly({-e: a for e, a in f.items()})


def compose(f, g):
    """Polynomial composition ``f(g(T))`` by Horner's rule."""
    if not (f.is_polynomial() and g.is_polynomial()):
        raise InputError("compose needs polynomials")
    if f.is_zero():
        return f
    out = LaurentPoly()
    for e in range(f.ord_high, -1, -1):
        out = out * g + f.coeff(e)
    return out


# polynomial division and gcd over Q


def poly_divmod(f, g):
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if not (f.is_polynomial() and g.is_polynomial()):
        raise InputError("poly_divmod needs polynomials")
    q = {}
    r = dict(f.items())
    dg, lg = g.degree, g.leading_coeff()
    gi = list(g.items())
    while r:
        dr = max(r)
        if dr < dg:
            break
        c = r[dr] / lg
        k = dr - dg
        q[k] = c
        for e, a in gi:
            v = r.get(e + k, 0) - c * a
            if v:
                r[e + k] = v
            else:
                r.pop(e + k, None)
    return LaurentPoly(q), LaurentPoly(r)


def _monic(f):
    return f.scale(1 / f.leading_coeff())


def poly_gcd(f, g):
    """Monic gcd over Q (zero if both inputs are zero)."""
    while not g.is_zero():
        r = poly_divmod(f, g)[1]
        f, g = g, (_monic(r) if not r.is_zero() else r)
    return _monic(f) if not f.is_zero() else f


class RationalMap:
    """A reduced fraction ``num/den`` of polynomials over Q.

    The constructor cancels the polynomial gcd and makes ``den`` monic.
    Laurent inputs with negative exponents are cleared by a power of T.

    EXAMPLES::

        >>> RationalMap(T**2 - 1, T - 1)
        RationalMap(T + 1, 1)
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _lift(num)
        den = LaurentPoly.constant(1) if den is None else _lift(den)
        if den.is_zero():
            raise DegenerateInputError("denominator is zero")
        k = 0
        if not num.is_zero():
            k = max(k, -num.ord_low)
        k = max(k, -den.ord_low)
        if k:
            num, den = num.shift_exponents(k), den.shift_exponents(k)
        if num.is_zero():
            num, den = LaurentPoly(), LaurentPoly.constant(1)
        else:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num = poly_divmod(num, g)[0]
                den = poly_divmod(den, g)[0]
            lc = den.leading_coeff()
            num, den = num.scale(1 / lc), den.scale(1 / lc)
        self.num = num
        self.den = den

    @classmethod
    def from_json(cls, obj, field="map"):
        if isinstance(obj, dict) and "num" in obj:
            num = LaurentPoly.from_json(obj["num"], f"{field}.num")
            den = LaurentPoly.from_json(obj.get("den", {"0": "1"}), f"{field}.den")
            if den.is_zero():
                raise InputError(f"{field}.den: zero denominator")
            return cls(num, den)
        return cls(LaurentPoly.from_json(obj, field))

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    def __repr__(self):
        return f"RationalMap({self.num!r}, {self.den!r})"

    def __eq__(self, other):
        if not isinstance(other, RationalMap):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    @property
    def degree(self):
        dn = self.num.degree if not self.num.is_zero() else 0
        return max(dn, self.den.degree)

    def is_constant(self):
        return self.degree == 0

    def is_polynomial(self):
        return self.den.degree == 0

    def __call__(self, x):
        """Evaluate at a rational or ``INFTY``; poles return ``INFTY``."""
        if x is INFTY:
            dn = self.num.degree if not self.num.is_zero() else -1
            dd = self.den.degree
            if dn > dd:
                return INFTY
            if dn < dd:
                return Fraction(0)
            return self.num.leading_coeff() / self.den.leading_coeff()
        d = self.den(x)
        if d == 0:
            return INFTY
        return self.num(x) / d

    def shift(self, a):
        """``U -> Phi(a + U)``."""
        return RationalMap(taylor_shift(self.num, a), taylor_shift(self.den, a))

    def invert_source(self):
        """``U -> Phi(1/U)``."""
        return RationalMap(invert_coordinate(self.num), invert_coordinate(self.den))

    def reciprocal(self):
        if self.num.is_zero():
            raise DegenerateInputError("reciprocal of the zero map")
        return RationalMap(self.den, self.num)

    def derivative_parts(self):
        """Return ``(W, den**2)`` with ``Phi' = W / den**2``."""
        return wronskian(self, allow_zero=True), self.den * self.den


def wronskian(phi, allow_zero=False):
    """``W = A'B - AB'`` for ``phi = A/B``; zero only for constant maps."""
    a, b = phi.num, phi.den
    w = derivative(a) * b - a * derivative(b)
    if w.is_zero() and not allow_zero:
        raise DegenerateInputError("Wronskian vanishes: the map is constant")
    return w


def sub_const(phi, c):
    """``phi - c`` for rational ``c``; ``1/phi`` for ``c = INFTY``."""
    if c is INFTY:
        return phi.reciprocal()
    c = Fraction(c)
    return RationalMap(phi.num - phi.den.scale(c), phi.den)


def chart(phi, center, inverted=False):
    """Target chart: ``phi - center`` or ``1/(phi - center)``."""
    if center is INFTY:
        return phi.reciprocal()
    g = sub_const(phi, center)
    return g.reciprocal() if inverted else g


def compose_maps(phi, psi):
    """Return the reduced rational map ``phi(psi(T))``."""
    n = phi.degree
    P, Q = psi.num, psi.den
    ppow = [LaurentPoly.constant(1)]
    qpow = [LaurentPoly.constant(1)]
    for _ in range(n):
        ppow.append(ppow[-1] * P)
        qpow.append(qpow[-1] * Q)

    def homog(f):
        out = LaurentPoly()
        for e, a in f.items():
            out = out + (ppow[e] * qpow[n - e]).scale(a)
        return out

    return RationalMap(homog(phi.num), homog(phi.den))
