"""Image of the unit circle: sampling, minimum distance to the origin, and a
typically-real sampling check.

The minimum is a numeric search (coarse float grid, then golden-section
refinement in multiprecision); only the distance value at the returned point
is a certified enclosure, not its global minimality.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import mpmath
import mpmath.libmp as mpl
import numpy as np

from .arith import DEFAULT_PRECISION, CertifiedComplex, CertifiedReal, pi
from .closedform import eval_direct
from .families import FamilySpec
from .polynomial import RealPolynomial

INV_PHI = (math.sqrt(5) - 1) / 2
DEFAULT_GRID = 4096
DEFAULT_REFINE_TOL = 2.0**-48


@dataclass(frozen=True)
class BoundaryCurve:
    samples: list[tuple[CertifiedReal, CertifiedReal, CertifiedReal, CertifiedReal]]
    polynomial_id: FamilySpec | None = None


@dataclass(frozen=True)
class MinDistanceResult:
    t_star: CertifiedReal
    distance: CertifiedReal
    attained_at_minus1: bool
    converged: bool = True
    iterations: int = 0


@dataclass(frozen=True)
class TypicallyRealResult:
    ok: bool
    witness: float | None = None

    def __bool__(self):
        return self.ok


def modulus(v: CertifiedComplex) -> CertifiedReal:
    """``|v|`` as a nonnegative ball."""
    sq = v.abs2().clip_nonnegative()
    if mpl.mpf_sign(sq.lower()) > 0:
        return sq.sqrt()
    hi = mpl.mpf_sqrt(sq.upper(), 64, mpl.round_up)
    return CertifiedReal.from_interval(mpl.fzero, hi, sq.prec)


def sample_curve(p: RealPolynomial, count: int, polynomial_id: FamilySpec | None = None,
                 precision: int = 64) -> BoundaryCurve:
    """``count`` uniform samples of ``p(e^{it})`` on ``[0, 2 pi)``.

    Only ``[0, pi]`` is evaluated; the other half is the mirror image.
    """
    if count < 8:
        raise ValueError("count must be >= 8")
    if p.precision != precision:
        p = RealPolynomial(c.with_precision(precision) for c in p.coeffs)
    two_pi = 2 * pi(precision)
    ts = [two_pi * CertifiedReal.exact(j, precision) / count if j else CertifiedReal.exact(0, precision)
          for j in range(count)]
    half = count // 2
    values: dict[int, CertifiedComplex] = {}
    for j in range(half + 1):
        values[j] = eval_direct(p, ts[j])
    for j in range(half + 1, count):
        values[j] = values[count - j].conjugate()
    samples = [(ts[j], values[j].re, values[j].im, modulus(values[j])) for j in range(count)]
    return BoundaryCurve(samples, polynomial_id)


def _float_coeffs(p: RealPolynomial) -> np.ndarray:
    return np.array([float(c) for c in p.coeffs])


def _coarse_scan(p: RealPolynomial, grid: int) -> tuple[np.ndarray, np.ndarray]:
    t = np.linspace(0.0, np.pi, grid + 1)
    z = np.exp(1j * t)
    vals = np.polynomial.polynomial.polyval(z, _float_coeffs(p))
    return t, np.abs(vals) ** 2


def min_distance(p: RealPolynomial, grid: int = DEFAULT_GRID, refine_tol=DEFAULT_REFINE_TOL,
                 precision: int = DEFAULT_PRECISION) -> MinDistanceResult:
    """Minimum of ``|p(e^{it})|`` over the circle, for real-coefficient ``p``.

    A coarse grid on ``[0, pi]`` picks the bracketing triple, which golden
    section refines to relative width ``refine_tol``. Brackets at ``t = pi``
    extend past it, using the symmetry ``|p(e^{i(2pi - t)})| = |p(e^{it})|``.
    """
    if grid < 64:
        raise ValueError("grid must be >= 64")
    t, vals = _coarse_scan(p, grid)
    i = int(np.argmin(vals))
    h = np.pi / grid
    tol = float(refine_tol)

    ctx = mpmath.MPContext()
    ctx.prec = precision + 20
    coeffs = [ctx.mpf(c.mid) for c in p.coeffs]

    def f(tt):
        z = ctx.expj(tt)
        acc = ctx.mpc(0)
        for c in reversed(coeffs):
            acc = acc * z + c
        return abs(acc) ** 2

    a = ctx.mpf(t[i]) - h
    b = ctx.mpf(t[i]) + h
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = f(x1), f(x2)
    iterations = 0
    while (b - a) > tol * max(1, abs(a)) and iterations < 400:
        if f1 < f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = f(x2)
        iterations += 1
    converged = (b - a) <= tol * max(1, abs(a))
    if not converged:
        warnings.warn(f"golden-section refinement stopped at width {float(b - a):.3g} "
                      f"above tolerance {tol:.3g}", RuntimeWarning, stacklevel=2)

    t_star = CertifiedReal.from_interval(a._mpf_, b._mpf_, precision)
    point = CertifiedReal(((a + b) / 2)._mpf_, mpl.fzero, precision)
    best = modulus(eval_direct(p, point))
    at_pi = modulus(eval_direct(p, pi(precision)))
    if i == grid and mpl.mpf_le(at_pi.mid, best.mid):
        # the grid endpoint is exactly t = pi
        best = at_pi
    # -1 attains the minimum if the minimiser brackets pi or the values agree
    # (the latter covers flat moduli such as p(z) = z)
    at_minus1 = t_star.overlaps(pi(precision)) or at_pi.overlaps(best)
    return MinDistanceResult(t_star, best, at_minus1, converged, iterations)


def typically_real_check(p: RealPolynomial, grid: int = 512) -> TypicallyRealResult:
    """Look for ``t`` in ``(0, pi)`` with ``Im p(e^{it})`` certified negative.

    Values are computed in double precision with an a-priori rounding bound
    ``|err| <= 2^-48 (N + 1)^2 sum |a_k|``; a sample counts as a violation only
    when the whole interval ``value +/- err`` is negative. ``ok=True`` means no
    violation was found on this grid, not a proof.
    """
    a = _float_coeffs(p)
    n = len(a)
    bound = 2.0**-48 * n * n * float(np.sum(np.abs(a)))
    t = np.linspace(0.0, np.pi, grid + 1)[1:-1]
    k = np.arange(n)
    im = np.sin(np.outer(t, k)) @ a
    bad = np.nonzero(im + bound < 0)[0]
    if bad.size:
        return TypicallyRealResult(False, float(t[bad[0]]))
    return TypicallyRealResult(True)
