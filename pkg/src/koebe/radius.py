"""Koebe-radius bounds for degree-N polynomials.

* upper: ``|P_N(-1)| = sec^2(pi/(N+2)) / 4``
* Suffridge comparison: ``|S_N(-1)| = (N+1)/(4N) sec^2(pi/(2(N+1)))`` and the
  numerically searched boundary minimum of ``S_N``
* lower (Rogosinski-Szego): ``sec^2(psi_N) / 4``
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import mpmath.libmp as mpl

from .arith import DEFAULT_PRECISION, CertifiedReal, Sign, pi, trig_constant
from .boundary import DEFAULT_GRID, min_distance
from .families import pnew_coeffs, suffridge_coeffs
from .pullback import certify_univalence


@dataclass(frozen=True)
class RadiusReport:
    N: int
    upper_pn: CertifiedReal
    suffridge_at_minus1: CertifiedReal
    suffridge_boundary_min: CertifiedReal
    psi_n: CertifiedReal
    lower_rs: CertifiedReal
    boundary_min: CertifiedReal
    certified: bool
    pn_min_at_minus1: bool = True
    suffridge_min_at_minus1: bool = True


def upper_bound_pn(N: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    if N < 1:
        raise ValueError("N must be >= 1")
    c = trig_constant("cos", 1, N + 2, precision)
    return 1 / (4 * c.sqr())


def suffridge_value(N: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    if N < 1:
        raise ValueError("N must be >= 1")
    c = trig_constant("cos", 1, 2 * (N + 1), precision)
    return CertifiedReal.exact(Fraction(N + 1, 4 * N), precision) / c.sqr()


def _rs_equation(N: int, psi: CertifiedReal) -> CertifiedReal:
    return (N + 4) * ((N + 2) * psi).sin() + (N + 2) * ((N + 4) * psi).sin()


def psi_n(N: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    """``pi/(N+3)`` for odd N; for even N the smallest positive root of
    ``(N+4) sin((N+2) psi) + (N+2) sin((N+4) psi)``, bracketed in
    ``(pi/(N+3), pi/(N+2))`` and bisected to width ``2**(-precision/2)``.
    """
    if N < 1:
        raise ValueError("N must be >= 1")
    if N % 2:
        return pi(precision) / (N + 3)

    p = precision
    lo = (pi(p) / (N + 3)).mid
    hi = (pi(p) / (N + 2)).mid

    def sign_at(x) -> Sign:
        return _rs_equation(N, CertifiedReal(x, mpl.fzero, p)).sign()

    if sign_at(lo) is not Sign.POSITIVE or sign_at(hi) is not Sign.NEGATIVE:
        raise ArithmeticError(f"bracket (pi/{N + 3}, pi/{N + 2}) does not change sign for N={N}")

    target = mpl.mpf_shift(mpl.fone, -(p // 2))
    while mpl.mpf_lt(target, mpl.mpf_sub(hi, lo)):
        width = mpl.mpf_sub(hi, lo)
        for eighths in (4, 3, 5):
            # midpoint first; off-centre points only when the midpoint is undecided
            x = mpl.mpf_add(lo, mpl.mpf_shift(mpl.mpf_mul(width, mpl.from_int(eighths)), -3))
            s = sign_at(x)
            if s is Sign.POSITIVE:
                lo = x
                break
            if s is Sign.NEGATIVE:
                hi = x
                break
        else:
            break
    return CertifiedReal.from_interval(lo, hi, p)


def lower_bound_rs(N: int, precision: int = DEFAULT_PRECISION) -> CertifiedReal:
    c = psi_n(N, precision).cos()
    return 1 / (4 * c.sqr())


def radius_row(N: int, precision: int = DEFAULT_PRECISION, grid: int = DEFAULT_GRID) -> RadiusReport:
    pn_min = min_distance(pnew_coeffs(N, precision), grid, precision=precision)
    s_min = min_distance(suffridge_coeffs(N, 1, precision), grid, precision=precision)
    return RadiusReport(
        N=N,
        upper_pn=upper_bound_pn(N, precision),
        suffridge_at_minus1=suffridge_value(N, precision),
        suffridge_boundary_min=s_min.distance,
        psi_n=psi_n(N, precision),
        lower_rs=lower_bound_rs(N, precision),
        boundary_min=pn_min.distance,
        certified=certify_univalence(N, precision=precision).certified,
        pn_min_at_minus1=pn_min.attained_at_minus1,
        suffridge_min_at_minus1=s_min.attained_at_minus1,
    )


def radius_table(N_max: int, precision: int = DEFAULT_PRECISION, grid: int = DEFAULT_GRID,
                 N_min: int = 1, workers: int = 1) -> list[RadiusReport]:
    """One report per ``N`` in ``[N_min, N_max]``, ordered by ``N``."""
    if N_max < N_min or N_min < 1:
        raise ValueError("need 1 <= N_min <= N_max")
    ns = range(N_min, N_max + 1)
    if workers <= 1:
        return [radius_row(N, precision, grid) for N in ns]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(radius_row, ns, [precision] * len(ns), [grid] * len(ns)))
