"""Ball arithmetic over mpmath raw floats.

A :class:`CertifiedReal` is a midpoint/radius pair; every operation returns a
ball containing the exact result for any members of the operand balls.
Midpoints are rounded to nearest at the working precision, radii are kept at
low precision and always rounded away from zero.

Elementary functions (pi, sin, cos, atan, sqrt) are evaluated with
``GUARD_BITS`` extra bits by mpmath and then charged a generous absolute error
budget, far above mpmath's observed accuracy.
"""

from __future__ import annotations

import threading
from enum import Enum
from fractions import Fraction
from typing import Callable, Union

import mpmath.libmp as mpl
from mpmath.libmp import fzero, fone

DEFAULT_PRECISION = 128
DEFAULT_PRECISION_CAP = 8192
GUARD_BITS = 40
RAD_PREC = 30

_NEAR = mpl.round_nearest
_UP = mpl.round_up
_DOWN = mpl.round_down

Number = Union[int, Fraction, float, "CertifiedReal"]


class Sign(Enum):
    NEGATIVE = "Negative"
    ZERO = "Zero"
    POSITIVE = "Positive"
    UNDECIDED = "Undecided"


def _rel_err(m, prec):
    # Rounding to nearest at `prec` bits moves a value by at most |m| 2^-prec.
    if m == fzero:
        return fzero
    return mpl.mpf_shift(mpl.mpf_abs(m), -prec)


def _span(a, b):
    """Bits needed to hold ``a + b`` exactly (both nonzero)."""
    return max(a[2] + a[3], b[2] + b[3]) - min(a[2], b[2]) + 1


def _add_err(a, b, m, prec):
    # exact when the operands' combined span fits in the working precision
    if a == fzero or b == fzero or _span(a, b) <= prec:
        return fzero
    return _rel_err(m, prec)


def _mul_err(a, b, m, prec):
    if a == fzero or b == fzero or a[3] + b[3] <= prec:
        return fzero
    return _rel_err(m, prec)


def _uadd(*terms):
    acc = fzero
    for t in terms:
        acc = mpl.mpf_add(acc, t, RAD_PREC, _UP)
    return acc


def _umul(a, b):
    return mpl.mpf_mul(a, b, RAD_PREC, _UP)


def _abs_err(prec):
    return mpl.mpf_shift(fone, -(prec + GUARD_BITS - 10))


class CertifiedReal:
    """Real ball ``[mid - rad, mid + rad]`` carried at ``prec`` bits.

    Ordering operators (``<``, ``>``, ...) are *certain* comparisons: they
    return True only when every pair of members satisfies the relation.
    """

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid=fzero, rad=fzero, prec: int = DEFAULT_PRECISION):
        self.mid = mid
        self.rad = rad
        self.prec = prec

    # -- construction -------------------------------------------------

    @classmethod
    def exact(cls, value: Number, prec: int = DEFAULT_PRECISION) -> "CertifiedReal":
        """Ball around ``value``; zero radius when the value is dyadic."""
        if isinstance(value, CertifiedReal):
            return value
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return cls(mpl.from_int(value), fzero, prec)
        if isinstance(value, float):
            return cls(mpl.from_float(value), fzero, prec)
        if isinstance(value, Fraction):
            den = value.denominator
            if den & (den - 1) == 0:
                m = mpl.from_man_exp(value.numerator, -(den.bit_length() - 1))
                return cls(m, fzero, prec)
            m = mpl.from_rational(value.numerator, den, prec, _NEAR)
            return cls(m, _rel_err(m, prec), prec)
        if isinstance(value, str):
            return cls.exact(Fraction(value), prec)
        raise TypeError(f"cannot convert {type(value).__name__} to CertifiedReal")

    @classmethod
    def from_interval(cls, lo, hi, prec: int = DEFAULT_PRECISION) -> "CertifiedReal":
        """Ball whose endpoints are exactly the raw floats ``lo`` and ``hi``."""
        if mpl.mpf_lt(hi, lo):
            raise ValueError("empty interval")
        mid = mpl.mpf_shift(mpl.mpf_add(lo, hi), -1)
        rad = mpl.mpf_shift(mpl.mpf_sub(hi, lo), -1)
        return cls(mid, rad, prec)

    def _coerce(self, other) -> "CertifiedReal":
        if isinstance(other, CertifiedReal):
            return other
        return CertifiedReal.exact(other, self.prec)

    # -- inspection ---------------------------------------------------

    def lower(self):
        return mpl.mpf_sub(self.mid, self.rad)

    def upper(self):
        return mpl.mpf_add(self.mid, self.rad)

    def magnitude(self):
        """Upper bound of ``|x|`` (low precision)."""
        return _uadd(mpl.mpf_abs(self.mid), self.rad)

    def is_exact(self) -> bool:
        return self.rad == fzero

    def is_zero(self) -> bool:
        """True only for the exact zero."""
        return self.rad == fzero and self.mid == fzero

    def contains_zero(self) -> bool:
        return not mpl.mpf_lt(self.rad, mpl.mpf_abs(self.mid))

    def sign(self) -> Sign:
        if self.is_zero():
            return Sign.ZERO
        if self.contains_zero():
            return Sign.UNDECIDED
        return Sign.POSITIVE if mpl.mpf_sign(self.mid) > 0 else Sign.NEGATIVE

    def contains(self, value: Number) -> bool:
        """True when the ball certainly contains every member of ``value``."""
        v = value if isinstance(value, CertifiedReal) else CertifiedReal.exact(value, self.prec + 64)
        return mpl.mpf_le(self.lower(), v.lower()) and mpl.mpf_le(v.upper(), self.upper())

    def overlaps(self, other: Number) -> bool:
        other = self._coerce(other)
        gap = mpl.mpf_abs(mpl.mpf_sub(self.mid, other.mid))
        return not mpl.mpf_lt(mpl.mpf_add(self.rad, other.rad), gap)

    def width(self) -> float:
        return mpl.to_float(mpl.mpf_shift(self.rad, 1))

    def __lt__(self, other):
        return (self._coerce(other) - self).sign() is Sign.POSITIVE

    def __gt__(self, other):
        return (self - self._coerce(other)).sign() is Sign.POSITIVE

    def __le__(self, other):
        return (self._coerce(other) - self).sign() in (Sign.POSITIVE, Sign.ZERO)

    def __ge__(self, other):
        return (self - self._coerce(other)).sign() in (Sign.POSITIVE, Sign.ZERO)

    def __float__(self):
        return mpl.to_float(self.mid)

    def to_str(self, digits: int = 17) -> str:
        return mpl.to_str(self.mid, digits, strip_zeros=False)

    def rad_str(self) -> str:
        return mpl.to_str(self.rad, 3)

    def __repr__(self):
        return f"CertifiedReal({mpl.to_str(self.mid, 20)} +/- {mpl.to_str(self.rad, 3)})"

    def ldexp(self, k: int) -> "CertifiedReal":
        """Exact multiplication by ``2**k``."""
        return CertifiedReal(mpl.mpf_shift(self.mid, k), mpl.mpf_shift(self.rad, k), self.prec)

    def exponent(self) -> int:
        """``e`` with ``2**(e-1) <= |mid| < 2**e`` (0 for a zero midpoint)."""
        sign, man, exp, bc = self.mid
        return exp + bc if man else 0

    def with_precision(self, prec: int) -> "CertifiedReal":
        return CertifiedReal(self.mid, self.rad, prec)

    # -- arithmetic ---------------------------------------------------

    def __neg__(self):
        return CertifiedReal(mpl.mpf_neg(self.mid), self.rad, self.prec)

    def __pos__(self):
        return self

    def __abs__(self):
        if self.contains_zero():
            hi = self.magnitude()
            return CertifiedReal.from_interval(fzero, hi, self.prec)
        return self if mpl.mpf_sign(self.mid) > 0 else -self

    def __add__(self, other):
        if not isinstance(other, (CertifiedReal, int, Fraction, float)):
            return NotImplemented
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        m = mpl.mpf_add(self.mid, o.mid, p, _NEAR)
        return CertifiedReal(m, _uadd(self.rad, o.rad, _add_err(self.mid, o.mid, m, p)), p)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, (CertifiedReal, int, Fraction, float)):
            return NotImplemented
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        m = mpl.mpf_sub(self.mid, o.mid, p, _NEAR)
        return CertifiedReal(m, _uadd(self.rad, o.rad, _add_err(self.mid, o.mid, m, p)), p)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, (CertifiedReal, int, Fraction, float)):
            return NotImplemented
        o = self._coerce(other)
        p = max(self.prec, o.prec)
        m = mpl.mpf_mul(self.mid, o.mid, p, _NEAR)
        rad = _uadd(
            _umul(mpl.mpf_abs(self.mid), o.rad),
            _umul(mpl.mpf_abs(o.mid), self.rad),
            _umul(self.rad, o.rad),
            _mul_err(self.mid, o.mid, m, p),
        )
        return CertifiedReal(m, rad, p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, (CertifiedReal, int, Fraction, float)):
            return NotImplemented
        o = self._coerce(other)
        if o.contains_zero():
            raise ZeroDivisionError("divisor ball contains zero")
        p = max(self.prec, o.prec)
        m = mpl.mpf_div(self.mid, o.mid, p, _NEAR)
        if self.rad == fzero and o.rad == fzero:
            return CertifiedReal(m, _rel_err(m, p), p)
        q_up = mpl.mpf_div(mpl.mpf_abs(self.mid), mpl.mpf_abs(o.mid), RAD_PREC, _UP)
        den = mpl.mpf_sub(mpl.mpf_abs(o.mid), o.rad, RAD_PREC, _DOWN)
        num = _uadd(self.rad, _umul(q_up, o.rad))
        rad = _uadd(mpl.mpf_div(num, den, RAD_PREC, _UP), _rel_err(m, p))
        return CertifiedReal(m, rad, p)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = CertifiedReal(fone, fzero, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base.sqr()
        return result

    def sqr(self) -> "CertifiedReal":
        """Square with a nonnegative enclosure."""
        if self.contains_zero() and self.rad != fzero:
            hi = _umul(self.magnitude(), self.magnitude())
            return CertifiedReal.from_interval(fzero, hi, self.prec)
        return self * self

    def sqrt(self) -> "CertifiedReal":
        if self.is_zero():
            return self
        lo = self.lower()
        if mpl.mpf_sign(lo) <= 0:
            raise ValueError("sqrt of a ball not certified positive")
        p = self.prec
        m = mpl.mpf_sqrt(self.mid, p, _NEAR)
        # |sqrt(y) - sqrt(mid)| <= rad / sqrt(lo)
        slo = mpl.mpf_sqrt(lo, RAD_PREC, _DOWN)
        rad = _uadd(mpl.mpf_div(self.rad, slo, RAD_PREC, _UP), _rel_err(m, p))
        return CertifiedReal(m, rad, p)

    def _elementary(self, fn, lipschitz_rad):
        p = self.prec
        v = mpl.mpf_pos(fn(self.mid, p + GUARD_BITS), p, _NEAR)
        rad = _uadd(lipschitz_rad, _abs_err(p), _rel_err(v, p))
        return CertifiedReal(v, rad, p)

    def cos(self) -> "CertifiedReal":
        if self.is_zero():
            return CertifiedReal(fone, fzero, self.prec)
        return self._elementary(lambda x, wp: mpl.mpf_cos(x, wp), self.rad)

    def sin(self) -> "CertifiedReal":
        if self.is_zero():
            return self
        return self._elementary(lambda x, wp: mpl.mpf_sin(x, wp), self.rad)

    def atan(self) -> "CertifiedReal":
        if self.is_zero():
            return self
        return self._elementary(lambda x, wp: mpl.mpf_atan(x, wp), self.rad)

    def clip_nonnegative(self) -> "CertifiedReal":
        """Intersect with ``[0, inf)``.

        Only valid when the enclosed quantity is known to be nonnegative.
        """
        if mpl.mpf_sign(self.lower()) >= 0:
            return self
        hi = self.upper()
        if mpl.mpf_sign(hi) < 0:
            raise ValueError("ball is certified negative")
        return CertifiedReal.from_interval(fzero, hi, self.prec)


class CertifiedComplex:
    """Rectangular complex ball with componentwise enclosure semantics."""

    __slots__ = ("re", "im")

    def __init__(self, re: CertifiedReal, im: CertifiedReal | None = None):
        self.re = re
        self.im = im if im is not None else CertifiedReal(fzero, fzero, re.prec)

    @classmethod
    def exp_i(cls, t: CertifiedReal) -> "CertifiedComplex":
        return cls(t.cos(), t.sin())

    @property
    def prec(self) -> int:
        return max(self.re.prec, self.im.prec)

    def conjugate(self) -> "CertifiedComplex":
        return CertifiedComplex(self.re, -self.im)

    def __neg__(self):
        return CertifiedComplex(-self.re, -self.im)

    def __add__(self, other):
        if isinstance(other, CertifiedComplex):
            return CertifiedComplex(self.re + other.re, self.im + other.im)
        return CertifiedComplex(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, CertifiedComplex):
            return CertifiedComplex(self.re - other.re, self.im - other.im)
        return CertifiedComplex(self.re - other, self.im)

    def __mul__(self, other):
        if isinstance(other, CertifiedComplex):
            return CertifiedComplex(
                self.re * other.re - self.im * other.im,
                self.re * other.im + self.im * other.re,
            )
        return CertifiedComplex(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CertifiedComplex):
            den = other.abs2()
            num = self * other.conjugate()
            return CertifiedComplex(num.re / den, num.im / den)
        return CertifiedComplex(self.re / other, self.im / other)

    def abs2(self) -> CertifiedReal:
        return self.re.sqr() + self.im.sqr()

    def overlaps(self, other) -> bool:
        if not isinstance(other, CertifiedComplex):
            other = CertifiedComplex(self.re._coerce(other))
        return self.re.overlaps(other.re) and self.im.overlaps(other.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"CertifiedComplex({self.re!r}, {self.im!r})"


_pi_cache: dict[int, CertifiedReal] = {}
_pi_lock = threading.Lock()


def pi(prec: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Enclosure of pi, computed once per precision."""
    cached = _pi_cache.get(prec)
    if cached is not None:
        return cached
    with _pi_lock:
        cached = _pi_cache.get(prec)
        if cached is None:
            m = mpl.mpf_pos(mpl.mpf_pi(prec + GUARD_BITS), prec, _NEAR)
            cached = CertifiedReal(m, _uadd(_abs_err(prec), _rel_err(m, prec)), prec)
            _pi_cache[prec] = cached
    return cached


# sin(pi r) for r in [0, 1/2] with exactly representable values
_EXACT_SIN = {Fraction(0): 0, Fraction(1, 6): Fraction(1, 2), Fraction(1, 2): 1}


def trig_constant(kind: str, numerator: int, denominator: int,
                  precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Enclosure of ``sin(numerator*pi/denominator)`` or the cosine."""
    if denominator < 1:
        raise ValueError("denominator must be >= 1")
    if kind not in ("sin", "cos"):
        raise ValueError(f"unknown trig kind {kind!r}")
    r = Fraction(numerator, denominator)
    if kind == "cos":
        r += Fraction(1, 2)
    r %= 2
    negate = r >= 1
    if negate:
        r -= 1
    if r > Fraction(1, 2):
        r = 1 - r
    if r in _EXACT_SIN:
        val = CertifiedReal.exact(_EXACT_SIN[r], precision)
    else:
        wp = precision + GUARD_BITS
        angle = mpl.mpf_mul(mpl.mpf_pi(wp), mpl.from_rational(r.numerator, r.denominator, wp), wp)
        m = mpl.mpf_pos(mpl.mpf_sin(angle, wp), precision, _NEAR)
        val = CertifiedReal(m, _uadd(_abs_err(precision), _rel_err(m, precision)), precision)
    return -val if negate else val


def certified_sign(x: CertifiedReal, max_precision: int = DEFAULT_PRECISION_CAP,
                   refine: Callable[[int], CertifiedReal] | None = None) -> Sign:
    """Sign of ``x``, recomputing via ``refine`` at doubled precision while undecided.

    Returns ``Sign.UNDECIDED`` once the next doubling would exceed
    ``max_precision``.
    """
    while True:
        s = x.sign()
        if s is not Sign.UNDECIDED or refine is None:
            return s
        nxt = x.prec * 2
        if nxt > max_precision:
            return Sign.UNDECIDED
        x = refine(nxt)


def to_fraction(x: CertifiedReal) -> Fraction:
    """Exact rational value of an exact ball's midpoint."""
    sign, man, exp, _ = x.mid
    if not man:
        return Fraction(0)
    v = Fraction(int(man)) * (Fraction(2) ** exp)
    return -v if sign else v
