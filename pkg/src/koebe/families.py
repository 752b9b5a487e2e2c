"""Coefficient generators for the polynomial families and their trigonometric kernels.

Every generator returns a :class:`RealPolynomial` whose index ``k`` holds the
coefficient of ``z**k``; the constant term is an exact zero and the ``z``
coefficient is an exact one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import DEFAULT_PRECISION, CertifiedComplex, CertifiedReal, trig_constant
from .polynomial import RealPolynomial

FAMILIES = ("fejer", "alexander", "suffridge", "egervary-szasz", "pnew")


@dataclass(frozen=True)
class FamilySpec:
    family: str
    degree: int
    j: int = 1

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; expected one of {FAMILIES}")
        if self.degree < 1:
            raise ValueError("degree must be >= 1")
        if self.family == "suffridge" and not 1 <= self.j <= self.degree:
            raise ValueError(f"Suffridge index j={self.j} outside 1..{self.degree}")

    @property
    def label(self) -> str:
        if self.family == "suffridge":
            return f"suffridge(N={self.degree}, j={self.j})"
        return f"{self.family}(N={self.degree})"

    def coefficients(self, precision: int = DEFAULT_PRECISION) -> RealPolynomial:
        N = self.degree
        if self.family == "fejer":
            return fejer_coeffs(N, precision)
        if self.family == "alexander":
            return alexander_coeffs(N, precision)
        if self.family == "suffridge":
            return suffridge_coeffs(N, self.j, precision)
        if self.family == "egervary-szasz":
            return egervary_szasz_cosine_coeffs(N, precision)
        return pnew_coeffs(N, precision)


def _check_degree(N: int) -> None:
    if N < 1:
        raise ValueError(f"degree N must be >= 1, got {N}")


def _normalized(values: list[CertifiedReal], precision: int) -> RealPolynomial:
    # z coefficient is 1 by construction; store it exactly.
    one = CertifiedReal.exact(1, precision)
    return RealPolynomial([CertifiedReal.exact(0, precision), one, *values[1:]])


def alexander_coeffs(N: int, precision: int = DEFAULT_PRECISION) -> RealPolynomial:
    """Partial sum of ``-log(1 - z)``: coefficients ``1/k``."""
    _check_degree(N)
    return RealPolynomial.from_values([0] + [Fraction(1, k) for k in range(1, N + 1)], precision)


def fejer_coeffs(N: int, precision: int = DEFAULT_PRECISION) -> RealPolynomial:
    _check_degree(N)
    return RealPolynomial.from_values(
        [0] + [Fraction(N - k + 1, N) for k in range(1, N + 1)], precision
    )


def suffridge_coeffs(N: int, j: int = 1, precision: int = DEFAULT_PRECISION) -> RealPolynomial:
    """``S_{N,j}``: Fejer weights times ``sin(pi k j/(N+1)) / sin(pi j/(N+1))``."""
    _check_degree(N)
    if not 1 <= j <= N:
        raise ValueError(f"Suffridge index j={j} outside 1..{N}")
    den = trig_constant("sin", j, N + 1, precision)
    values = [
        CertifiedReal.exact(Fraction(N - k + 1, N), precision)
        * trig_constant("sin", k * j, N + 1, precision) / den
        for k in range(1, N + 1)
    ]
    return _normalized(values, precision)


def egervary_szasz_bk(N: int, k: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Cosine coefficient ``b_k`` of the Egervary-Szasz polynomial, ``b_0 = 1``."""
    _check_degree(N)
    if not 0 <= k <= N:
        raise ValueError(f"k={k} outside 0..{N}")
    if k == 0:
        return CertifiedReal.exact(1, precision)
    m = N + 2
    num = ((N - k + 3) * trig_constant("sin", k + 1, m, precision)
           - (N - k + 1) * trig_constant("sin", k - 1, m, precision))
    return num / (m * trig_constant("sin", 1, m, precision))


def egervary_szasz_cosine_coeffs(N: int, precision: int = DEFAULT_PRECISION) -> RealPolynomial:
    """The vector ``b_0..b_N`` (cosine coefficients, not a member of the normalized class)."""
    return RealPolynomial(egervary_szasz_bk(N, k, precision) for k in range(N + 1))


def pnew_coeffs(N: int, precision: int = DEFAULT_PRECISION) -> RealPolynomial:
    """``P_N``: ``b_k sin(k pi/(N+2))`` rescaled so the ``z`` coefficient is one."""
    _check_degree(N)
    m = N + 2
    raw = [egervary_szasz_bk(N, k, precision) * trig_constant("sin", k, m, precision)
           for k in range(1, N + 1)]
    first = raw[0]
    return _normalized([c / first for c in raw], precision)


def _as_ball(t, precision):
    return t if isinstance(t, CertifiedReal) else CertifiedReal.exact(t, precision)


def fejer_kernel(N: int, t, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``|sum_{k=0}^N e^{ikt}|^2 / (N+1)``; nonnegative by construction."""
    t = _as_ball(t, precision)
    z = CertifiedComplex.exp_i(t)
    acc = CertifiedComplex(CertifiedReal.exact(1, t.prec))
    for _ in range(N):
        acc = acc * z + 1
    return acc.abs2() / (N + 1)


def fejer_kernel_cosine(N: int, t, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    t = _as_ball(t, precision)
    total = CertifiedReal.exact(1, t.prec)
    for k in range(1, N + 1):
        total = total + 2 * CertifiedReal.exact(Fraction(N + 1 - k, N + 1), t.prec) * (k * t).cos()
    return total


def egervary_szasz_eval(N: int, t, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Squared-modulus form ``2/(N+2) |sum sin(pi(k+1)/(N+2)) e^{ikt}|^2``."""
    t = _as_ball(t, precision)
    p = t.prec
    z = CertifiedComplex.exp_i(t)
    acc = CertifiedComplex(trig_constant("sin", N + 1, N + 2, p))
    for k in range(N - 1, -1, -1):
        acc = acc * z + trig_constant("sin", k + 1, N + 2, p)
    return acc.abs2() * Fraction(2, N + 2)


def egervary_szasz_cosine_eval(N: int, t, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """Cosine-sum form ``sum b_k cos(kt)``."""
    t = _as_ball(t, precision)
    total = CertifiedReal.exact(0, t.prec)
    for k in range(N + 1):
        total = total + egervary_szasz_bk(N, k, t.prec) * (k * t).cos()
    return total
