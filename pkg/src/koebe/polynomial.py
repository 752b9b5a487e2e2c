"""Dense univariate polynomials with ball coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .arith import DEFAULT_PRECISION, CertifiedComplex, CertifiedReal, Sign


class RealPolynomial:
    """Coefficients ``c[0..deg]`` with ``c[k]`` multiplying ``x**k``.

    Trailing coefficients are dropped only when they are the exact zero, so
    the leading coefficient of a nonzero polynomial is never an exact zero
    (it may still be a ball containing zero).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[CertifiedReal]):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs: tuple[CertifiedReal, ...] = tuple(cs)

    @classmethod
    def from_values(cls, values: Sequence, prec: int = DEFAULT_PRECISION) -> "RealPolynomial":
        return cls(CertifiedReal.exact(v, prec) for v in values)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def precision(self) -> int:
        return max((c.prec for c in self.coeffs), default=DEFAULT_PRECISION)

    def leading(self) -> CertifiedReal:
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_exact(self) -> bool:
        return all(c.is_exact() for c in self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, k):
        return self.coeffs[k]

    def __iter__(self):
        return iter(self.coeffs)

    def coeff(self, k: int) -> CertifiedReal:
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        return CertifiedReal.exact(0, self.precision)

    def __add__(self, other: "RealPolynomial") -> "RealPolynomial":
        n = max(len(self), len(other))
        return RealPolynomial(self.coeff(k) + other.coeff(k) for k in range(n))

    def __sub__(self, other: "RealPolynomial") -> "RealPolynomial":
        n = max(len(self), len(other))
        return RealPolynomial(self.coeff(k) - other.coeff(k) for k in range(n))

    def __neg__(self):
        return RealPolynomial(-c for c in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, RealPolynomial):
            return RealPolynomial(_convolve(self.coeffs, other.coeffs))
        return RealPolynomial(c * other for c in self.coeffs)

    __rmul__ = __mul__

    def derivative(self) -> "RealPolynomial":
        return RealPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        """Horner evaluation at a real or complex ball (or plain number)."""
        if not self.coeffs:
            return CertifiedReal.exact(0, self.precision)
        acc = self.coeffs[-1]
        for c in reversed(self.coeffs[:-1]):
            acc = acc * x + c
        return acc

    def even_part_in_square(self) -> "RealPolynomial":
        """For an even polynomial ``p(x)``, the polynomial ``q`` with ``p(x) = q(x**2)``.

        Raises ValueError unless every odd coefficient is the exact zero.
        """
        if any(not c.is_zero() for c in self.coeffs[1::2]):
            raise ValueError("polynomial is not structurally even")
        return RealPolynomial(self.coeffs[0::2])

    def to_fractions(self) -> list[Fraction]:
        from .arith import to_fraction

        if not self.is_exact():
            raise ValueError("polynomial has inexact coefficients")
        return [to_fraction(c) for c in self.coeffs]

    def signs(self) -> list[Sign]:
        return [c.sign() for c in self.coeffs]

    def __repr__(self):
        terms = ", ".join(c.to_str(12) for c in self.coeffs)
        return f"RealPolynomial([{terms}])"


def _convolve(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [None] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero():
            continue
        for j, y in enumerate(b):
            term = x * y
            out[i + j] = term if out[i + j] is None else out[i + j] + term
    zero = CertifiedReal.exact(0, a[0].prec)
    return [zero if c is None else c for c in out]


def eval_on_circle(p: RealPolynomial, t: CertifiedReal) -> CertifiedComplex:
    """Horner evaluation of ``p(e^{it})``."""
    z = CertifiedComplex.exp_i(t)
    if not p.coeffs:
        return CertifiedComplex(CertifiedReal.exact(0, t.prec))
    acc = CertifiedComplex(p.coeffs[-1])
    for c in reversed(p.coeffs[:-1]):
        acc = acc * z + c
    return acc
