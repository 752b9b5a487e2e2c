"""Pull ``|P_N(e^{it})|^2`` back to the half-line and certify its monotonicity.

With ``t = 2 arctan x`` the boundary modulus becomes the rational function
``T_N(x) / (scale * (1 + x^2)^(N-1))``. ``P_N`` is univalent when the
derivative numerator ``Delta_N = T_N' (1 + x^2) - 2 (N-1) x T_N`` has no root
on ``(0, inf)`` and is negative there.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from functools import lru_cache

from .arith import (
    DEFAULT_PRECISION,
    DEFAULT_PRECISION_CAP,
    CertifiedReal,
    Sign,
    certified_sign,
)
from .families import pnew_coeffs
from .polynomial import RealPolynomial, _convolve
from .sturm import POSITIVE_AXIS, sturm_count

# T_N is stored as 4 |Q|^2 / (1 + x^2); with this factor T_1 = 4 and T_2 = 9 + x^2.
PULLBACK_SCALE = 4


class PullbackError(ArithmeticError):
    """Raised when an exact division leaves a remainder certified nonzero."""


class Verdict(Enum):
    CERTIFIED = "CertifiedMonotoneDecreasing"
    TRIVIAL = "TriviallyUnivalent"
    NOT_CERTIFIED = "NotCertified"


@dataclass(frozen=True)
class PullbackRational:
    N: int
    numerator: RealPolynomial
    denom_power: int
    scale: CertifiedReal

    def __call__(self, x) -> CertifiedReal:
        """``R_N(x)``, the squared boundary modulus at ``t = 2 arctan x``."""
        x = x if isinstance(x, CertifiedReal) else CertifiedReal.exact(x, self.numerator.precision)
        return self.numerator(x) / ((1 + x.sqr()) ** self.denom_power * self.scale)


@dataclass(frozen=True)
class UnivalenceCertificate:
    N: int
    root_count_pos_axis: int | None
    interior_sign: Sign
    stripped_zero_order: int
    verdict: Verdict
    precision_used: int

    @property
    def certified(self) -> bool:
        return self.verdict is not Verdict.NOT_CERTIFIED

    def to_dict(self) -> dict:
        d = asdict(self)
        d["interior_sign"] = self.interior_sign.value
        d["verdict"] = self.verdict.value
        return d


def _binomial_row(j: int, sign: int) -> list[int]:
    # coefficients of (1 + sign*s)^j
    return [math.comb(j, i) * sign**i for i in range(j + 1)]


def _substituted(a: RealPolynomial, N: int, prec: int) -> list[CertifiedReal]:
    """Real coefficients of ``sum_k a_k (1+s)^k (1-s)^(N-k)`` via Horner in ``(1+s)``."""
    zero = CertifiedReal.exact(0, prec)
    h = [a.coeff(N)]
    for k in range(N - 1, -1, -1):
        nxt = [zero] * (len(h) + 1)
        for i, c in enumerate(h):
            nxt[i] = nxt[i] + c
            nxt[i + 1] = nxt[i + 1] + c
        ak = a.coeff(k)
        if not ak.is_zero():
            for i, b in enumerate(_binomial_row(N - k, -1)):
                nxt[i] = nxt[i] + ak * b
        h = nxt
    return h


def pullback_tn(N: int, precision: int = DEFAULT_PRECISION) -> PullbackRational:
    """``T_N`` with ``R_N(x) = T_N(x) / (4 (1 + x^2)^(N-1))``.

    With ``e^{it} = (1+ix)/(1-ix)``, ``P_N(e^{it}) = Q(x) / (1-ix)^N`` where
    ``Q(x) = R(ix)`` for the real polynomial ``R(s) = sum a_k (1+s)^k (1-s)^(N-k)``.
    Splitting ``R(s) = E(s^2) + s O(s^2)`` gives
    ``|Q(x)|^2 = E(-u)^2 + u O(-u)^2`` with ``u = x^2``, so the result is even
    with exact zero odd coefficients. ``|Q|^2`` is then divided by ``1 + u``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    a = pnew_coeffs(N, precision)
    r = _substituted(a, N, precision)
    even = [c if j % 2 == 0 else -c for j, c in enumerate(r[0::2])]
    odd = [c if j % 2 == 0 else -c for j, c in enumerate(r[1::2])]
    w = _convolve(even, even)
    oo = _convolve(odd, odd)
    zero = CertifiedReal.exact(0, precision)
    w = w + [zero] * max(0, len(oo) + 1 - len(w))
    for j, c in enumerate(oo):
        w[j + 1] = w[j + 1] + c

    # synthetic division by (u + 1)
    n = len(w) - 1
    q = [zero] * n
    carry = w[n]
    for i in range(n - 1, -1, -1):
        q[i] = carry
        carry = w[i] - carry
    if not carry.contains_zero():
        raise PullbackError(f"|Q|^2 not divisible by 1 + x^2 for N={N}: remainder {carry!r}")

    coeffs = []
    for c in q:
        coeffs.extend([PULLBACK_SCALE * c, zero])
    numerator = RealPolynomial(coeffs)
    return PullbackRational(N, numerator, N - 1, CertifiedReal.exact(PULLBACK_SCALE, precision))


def delta_n(T: PullbackRational) -> RealPolynomial:
    """``Delta_N = T' (1 + x^2) - 2 d x T`` with ``d`` the denominator power.

    Coefficient ``m`` is ``(m+1) c_{m+1} + (m - 1 - 2d) c_{m-1}``; integer
    multipliers keep structural zeros exact.
    """
    c = T.numerator.coeffs
    d = T.denom_power
    prec = T.numerator.precision
    out = []
    for m in range(len(c) + 1):
        terms = []
        if m + 1 < len(c):
            terms.append((m + 1, c[m + 1]))
        if 0 <= m - 1 < len(c):
            terms.append((m - 1 - 2 * d, c[m - 1]))
        acc = CertifiedReal.exact(0, prec)
        for k, v in terms:
            if k and not v.is_zero():
                acc = acc + k * v
        out.append(acc)
    return RealPolynomial(out)


def strip_zero_root(p: RealPolynomial) -> tuple[RealPolynomial, int]:
    """Divide out ``x**m`` where ``m`` counts the exact-zero low-order coefficients."""
    m = 0
    while m < len(p.coeffs) and p.coeffs[m].is_zero():
        m += 1
    return RealPolynomial(p.coeffs[m:]), m


@lru_cache(maxsize=128)
def _stripped_delta(N: int, precision: int) -> tuple[RealPolynomial, int]:
    return strip_zero_root(delta_n(pullback_tn(N, precision)))


def _interior_value(N: int, precision: int) -> CertifiedReal:
    q, _ = _stripped_delta(N, precision)
    return q(CertifiedReal.exact(1, precision))


def _positive_root_count(q: RealPolynomial) -> int | None:
    try:
        # even in x: count roots of q(sqrt(y)) on y > 0 instead
        q = q.even_part_in_square()
    except ValueError:
        pass
    return sturm_count(q, POSITIVE_AXIS)


def certify_univalence(N: int, precision_cap: int = DEFAULT_PRECISION_CAP,
                       precision: int = DEFAULT_PRECISION) -> UnivalenceCertificate:
    """Certify that ``R_N`` is strictly decreasing on ``(0, inf)``.

    Precision doubles from ``precision`` while any sign is undecided; a
    NotCertified verdict is returned at the cap rather than a guess.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if N == 1:
        # T_1 is constant and Delta_1 vanishes identically; P_1 = z.
        return UnivalenceCertificate(1, 0, Sign.ZERO, 0, Verdict.TRIVIAL, precision)

    prec = precision
    while True:
        q, order = _stripped_delta(N, prec)
        count = _positive_root_count(q)
        if count is not None or prec * 2 > precision_cap:
            break
        prec *= 2

    sign = certified_sign(_interior_value(N, prec), precision_cap,
                          refine=lambda p: _interior_value(N, p))
    verdict = Verdict.CERTIFIED if count == 0 and sign is Sign.NEGATIVE else Verdict.NOT_CERTIFIED
    return UnivalenceCertificate(N, count, sign, order, verdict, prec)
