"""Exact arithmetic in the real quartic field Q(w), w = sqrt(1 + sqrt(2)).

The field contains Q(sqrt(2)) as the subfield spanned by {1, w^2}, since
w^2 = 1 + sqrt(2).  It is the smallest field in which the side-pairing
matrices of the regular-octagon surface group can be written down exactly,
which is what makes exact conjugacy-class deduplication possible for that
group.  Elements are stored as integer coordinates in the power basis
{1, w, w^2, w^3} over a common positive denominator, always normalized.

Multiplication reduces by the minimal polynomial w^4 = 2*w^2 + 1.
"""

from __future__ import annotations

import math
from fractions import Fraction
from math import gcd, isqrt

_WF = math.sqrt(1.0 + math.sqrt(2.0))
_POWS = (1.0, _WF, _WF * _WF, _WF * _WF * _WF)


def _frac_sqrt_bounds(x: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational lower/upper bounds for sqrt(x), x >= 0, accurate to ~2^-bits."""
    scale = 1 << bits
    p, q = x.numerator, x.denominator
    lo = isqrt(p * q * scale * scale)
    return Fraction(lo, q * scale), Fraction(lo + 1, q * scale)


def _beta_bounds(bits: int) -> tuple[Fraction, Fraction]:
    s_lo, s_hi = _frac_sqrt_bounds(Fraction(2), bits + 4)
    return (
        _frac_sqrt_bounds(1 + s_lo, bits)[0],
        _frac_sqrt_bounds(1 + s_hi, bits)[1],
    )


class ExactReal:
    """An element of Q(w) with exact ring/field operations."""

    __slots__ = ("a", "b", "c", "d", "den")

    def __init__(self, a=0, b=0, c=0, d=0, den=1):
        if isinstance(a, Fraction) or isinstance(den, Fraction) or den != 1 or any(
            isinstance(x, Fraction) for x in (b, c, d)
        ):
            fa, fb, fc, fd = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
            fden = Fraction(den)
            common = fden.numerator * fa.denominator * fb.denominator * fc.denominator * fd.denominator
            lcm = fden.denominator
            for f in (fa, fb, fc, fd):
                lcm = lcm * f.denominator // gcd(lcm, f.denominator)
            lcm *= fden.numerator if fden.numerator > 0 else -fden.numerator
            a = int(fa * lcm)
            b = int(fb * lcm)
            c = int(fc * lcm)
            d = int(fd * lcm)
            den = int(fden * lcm)
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        g = gcd(gcd(gcd(abs(a), abs(b)), gcd(abs(c), abs(d))), den)
        if g > 1:
            a //= g; b //= g; c //= g; d //= g; den //= g
        self.a, self.b, self.c, self.d, self.den = a, b, c, d, den

    @classmethod
    def _raw(cls, a, b, c, d, den):
        self = object.__new__(cls)
        if den < 0:
            a, b, c, d, den = -a, -b, -c, -d, -den
        g = gcd(gcd(gcd(abs(a), abs(b)), gcd(abs(c), abs(d))), den)
        if g > 1:
            a //= g; b //= g; c //= g; d //= g; den //= g
        self.a, self.b, self.c, self.d, self.den = a, b, c, d, den
        return self

    @classmethod
    def from_sqrt2(cls, p, q=0) -> "ExactReal":
        """The element p + q*sqrt(2), for rational p, q."""
        p, q = Fraction(p), Fraction(q)
        # sqrt(2) = w^2 - 1
        return cls(p - q, 0, q, 0)

    def __add__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return ExactReal._raw(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d, self.den)
        return ExactReal._raw(
            self.a * o.den + o.a * self.den,
            self.b * o.den + o.b * self.den,
            self.c * o.den + o.c * self.den,
            self.d * o.den + o.d * self.den,
            self.den * o.den,
        )

    __radd__ = __add__

    def __sub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __neg__(self):
        return ExactReal._raw(-self.a, -self.b, -self.c, -self.d, self.den)

    def __mul__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        a0, a1, a2, a3 = self.a, self.b, self.c, self.d
        b0, b1, b2, b3 = o.a, o.b, o.c, o.d
        c0 = a0 * b0
        c1 = a0 * b1 + a1 * b0
        c2 = a0 * b2 + a1 * b1 + a2 * b0
        c3 = a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0
        c4 = a1 * b3 + a2 * b2 + a3 * b1
        c5 = a2 * b3 + a3 * b2
        c6 = a3 * b3
        # w^4 = 2w^2+1, w^5 = 2w^3+w, w^6 = 5w^2+2
        return ExactReal._raw(
            c0 + c4 + 2 * c6,
            c1 + c5,
            c2 + 2 * c4 + 5 * c6,
            c3 + 2 * c5,
            self.den * o.den,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            return ExactReal._raw(self.a, self.b, self.c, self.d, self.den * other)
        if isinstance(other, Fraction):
            return ExactReal._raw(
                self.a * other.denominator,
                self.b * other.denominator,
                self.c * other.denominator,
                self.d * other.denominator,
                self.den * other.numerator,
            )
        return NotImplemented

    def __eq__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b, self.c, self.d, self.den) == (o.a, o.b, o.c, o.d, o.den)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d, self.den))

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def sign(self) -> int:
        """Exact sign (-1, 0, +1), decided by rational interval refinement."""
        if self.is_zero():
            return 0
        bits = 32
        while True:
            lo, hi = _beta_bounds(bits)
            vlo = Fraction(self.a, self.den)
            vhi = Fraction(self.a, self.den)
            for coef, plo, phi in (
                (self.b, lo, hi),
                (self.c, lo * lo, hi * hi),
                (self.d, lo * lo * lo, hi * hi * hi),
            ):
                f = Fraction(coef, self.den)
                if f >= 0:
                    vlo += f * plo
                    vhi += f * phi
                else:
                    vlo += f * phi
                    vhi += f * plo
            if vlo > 0:
                return 1
            if vhi < 0:
                return -1
            bits *= 2

    def __lt__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() < 0

    def __le__(self, other):
        o = _coerce(other)
        if o is None:
            return NotImplemented
        return (self - o).sign() <= 0

    def __gt__(self, other):
        return _coerce(other) is not None and (self - _coerce(other)).sign() > 0

    def __ge__(self, other):
        return _coerce(other) is not None and (self - _coerce(other)).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __float__(self):
        return (self.a + self.b * _POWS[1] + self.c * _POWS[2] + self.d * _POWS[3]) / self.den

    def in_sqrt2_subfield(self) -> bool:
        return self.b == 0 and self.d == 0

    def sqrt2_coords(self) -> tuple[Fraction, Fraction]:
        """Coordinates (p, q) with self = p + q*sqrt(2); requires membership."""
        if not self.in_sqrt2_subfield():
            raise ValueError("element is not in Q(sqrt(2))")
        # a + c*w^2 = (a + c) + c*sqrt(2)
        return Fraction(self.a + self.c, self.den), Fraction(self.c, self.den)

    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return tuple(Fraction(x, self.den) for x in (self.a, self.b, self.c, self.d))

    def __repr__(self):
        body = f"{self.a}, {self.b}, {self.c}, {self.d}"
        return f"ExactReal({body})" if self.den == 1 else f"ExactReal({body}, den={self.den})"


def _coerce(x):
    if isinstance(x, ExactReal):
        return x
    if isinstance(x, int):
        return ExactReal._raw(x, 0, 0, 0, 1)
    if isinstance(x, Fraction):
        return ExactReal._raw(x.numerator, 0, 0, 0, x.denominator)
    return None


ZERO = ExactReal(0)
ONE = ExactReal(1)
BETA = ExactReal(0, 1)
SQRT2 = ExactReal(-1, 0, 1)  # w^2 - 1
ONE_PLUS_SQRT2 = ExactReal(0, 0, 1)  # w^2


class ExactComplex:
    """Complex numbers with ExactReal parts; used to build matrices in the
    disk model before converting to real half-plane form."""

    __slots__ = ("re", "im")

    def __init__(self, re: ExactReal, im: ExactReal = ZERO):
        self.re, self.im = re, im

    def __add__(self, o):
        return ExactComplex(self.re + o.re, self.im + o.im)

    def __sub__(self, o):
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __neg__(self):
        return ExactComplex(-self.re, -self.im)

    def __mul__(self, o):
        return ExactComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    def conj(self):
        return ExactComplex(self.re, -self.im)

    def __eq__(self, o):
        return self.re == o.re and self.im == o.im

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"ExactComplex({self.re!r}, {self.im!r})"
