"""Boundary values of ``P_N`` from the closed-form trigonometric identities.

The closed forms have removable singularities at ``t = 0`` and
``t = 2 pi/(N+2)``. Inside a guard band of width ``2**(-prec/4)`` around
either point (measured in ``cos t``) evaluation falls back to direct
summation of the coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import mpmath.libmp as mpl

from .arith import DEFAULT_PRECISION, CertifiedComplex, CertifiedReal, pi, trig_constant
from .families import pnew_coeffs
from .polynomial import RealPolynomial


@dataclass(frozen=True)
class BoundaryPoint:
    t: CertifiedReal
    value: CertifiedComplex
    modulus_sq: CertifiedReal


def _ball(t, precision) -> CertifiedReal:
    return t if isinstance(t, CertifiedReal) else CertifiedReal.exact(t, precision)


def eval_direct(p: RealPolynomial, t) -> CertifiedComplex:
    """Enclosure of ``p(e^{it})`` by Horner summation.

    Negative ``t`` is evaluated as the conjugate of ``p(e^{-it})`` so that
    conjugate symmetry holds exactly.
    """
    t = _ball(t, p.precision)
    if mpl.mpf_sign(t.mid) < 0:
        return eval_direct(p, -t).conjugate()
    z = CertifiedComplex.exp_i(t)
    if p.is_zero():
        return CertifiedComplex(CertifiedReal.exact(0, t.prec))
    acc = CertifiedComplex(p.coeffs[-1])
    for c in reversed(p.coeffs[:-1]):
        acc = acc * z + c
    return acc


@lru_cache(maxsize=256)
def _pnew(N: int, precision: int) -> RealPolynomial:
    return pnew_coeffs(N, precision)


class _Reduced:
    """``t`` reduced to ``[0, pi]`` plus the trig quantities shared by the formulas."""

    def __init__(self, N: int, t: CertifiedReal):
        p = t.prec
        self.N = N
        two_pi = 2 * pi(p)
        turns = int(mpl.to_int(mpl.mpf_floor(mpl.mpf_div(t.mid, two_pi.mid, 64))))
        t = t - turns * two_pi if turns else t
        self.conjugate = False
        if t > pi(p):
            t = two_pi - t
            self.conjugate = True
        self.t = t
        self.cos_t = t.cos()
        self.c2 = trig_constant("cos", 2, N + 2, p)
        threshold = CertifiedReal(mpl.mpf_shift(mpl.fone, -(p // 4)), mpl.fzero, p)
        self.gap = self.cos_t - self.c2
        self.one_minus_cos = 1 - self.cos_t
        inside = t > 0 and t < pi(p)
        self.singular = (
            not inside
            or not abs(self.gap) > threshold
            or not abs(self.one_minus_cos) > threshold
        )


def _fallback(N: int, r: _Reduced) -> CertifiedComplex:
    return eval_direct(_pnew(N, r.t.prec), r.t)


def eval_theorem1(N: int, t, precision: int = DEFAULT_PRECISION) -> CertifiedComplex:
    """``P_N(e^{it})`` from the closed form

    ``1/(2(cos t - c)) + (1-c)/((N+2)(1-cos t)) * sin t sin((N+2)t/2)/(cos t - c)^2 * e^{i(N+2)t/2}``

    with ``c = cos(2 pi/(N+2))``.
    """
    r = _Reduced(N, _ball(t, precision))
    if r.singular:
        value = _fallback(N, r)
    else:
        half = (N + 2) * r.t / 2
        first = 1 / (2 * r.gap)
        amp = ((1 - r.c2) / ((N + 2) * r.one_minus_cos)) * (r.t.sin() * half.sin() / r.gap.sqr())
        value = CertifiedComplex(first + amp * half.cos(), amp * half.sin())
    return value.conjugate() if r.conjugate else value


def modulus_sq_theorem2(N: int, t, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``|P_N(e^{it})|^2`` as one quarter of a sum of two squares."""
    r = _Reduced(N, _ball(t, precision))
    if r.singular:
        return _fallback(N, r).abs2()
    half = (N + 2) * r.t / 2
    s_half = half.sin()
    first = half.cos() / r.gap + (
        CertifiedReal.exact(2, r.t.prec) / (N + 2) * (1 - r.c2) / r.one_minus_cos
        * r.t.sin() / r.gap.sqr() * s_half
    )
    second = s_half / r.gap
    return (first.sqr() + second.sqr()) / 4


def imag_part(N: int, t, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``Im P_N(e^{it})`` for ``t`` in ``(0, pi)``; every factor is nonnegative there."""
    t = _ball(t, precision)
    r = _Reduced(N, t)
    if r.conjugate:
        raise ValueError("imag_part expects t in (0, pi)")
    if r.singular:
        return _fallback(N, r).im
    half = (N + 2) * r.t / 2
    factors = [
        (1 - r.c2) / (N + 2),
        1 / r.one_minus_cos.clip_nonnegative(),
        r.t.sin().clip_nonnegative(),
        half.sin().sqr(),
        1 / r.gap.sqr(),
    ]
    return nonnegative_product(factors)


def nonnegative_product(factors: list[CertifiedReal]) -> CertifiedReal:
    """Product of balls known to enclose nonnegative reals, as an interval product."""
    prec = max(f.prec for f in factors)
    lo, hi = mpl.fone, mpl.fone
    for f in factors:
        f = f.clip_nonnegative()
        lo = mpl.mpf_mul(lo, f.lower(), prec + 30, mpl.round_down)
        hi = mpl.mpf_mul(hi, f.upper(), prec + 30, mpl.round_up)
    return CertifiedReal.from_interval(lo, hi, prec)


def boundary_point(N: int, t, precision: int = DEFAULT_PRECISION) -> BoundaryPoint:
    t = _ball(t, precision)
    value = eval_theorem1(N, t, precision)
    return BoundaryPoint(t, value, value.abs2())


def value_at_minus_one(N: int, precision: int = DEFAULT_PRECISION) -> CertifiedComplex:
    """``P_N(-1)`` by direct summation."""
    return eval_direct(_pnew(N, precision), pi(precision))
