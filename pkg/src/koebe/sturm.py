"""Real root counting by Sturm sequences.

Polynomials whose coefficients are all exact (zero radius) are processed in
exact rational arithmetic, so repeated roots and degree drops in the
remainder chain are detected exactly. Otherwise the chain runs in ball
arithmetic and any sign that cannot be certified makes the count undecided.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .arith import CertifiedReal, Sign, to_fraction
from .polynomial import RealPolynomial

POSITIVE_AXIS = (0, math.inf)


class _Undecided(Exception):
    pass


def _sign(c) -> Sign:
    if isinstance(c, Fraction):
        return Sign.ZERO if c == 0 else (Sign.POSITIVE if c > 0 else Sign.NEGATIVE)
    s = c.sign()
    if s is Sign.UNDECIDED:
        raise _Undecided
    return s


def _trim(cs: list) -> list:
    while cs and _sign(cs[-1]) is Sign.ZERO:
        cs.pop()
    return cs


def _derivative(cs: Sequence) -> list:
    return [k * c for k, c in enumerate(cs) if k]


def _rem(a: Sequence, b: Sequence) -> list:
    """Remainder of ``a`` by ``b``; the eliminated leading terms are dropped, not computed."""
    r = list(a)
    db = len(b) - 1
    lb = b[-1]
    while len(r) - 1 >= db and r:
        q = r[-1] / lb
        shift = len(r) - 1 - db
        for i in range(db):
            r[shift + i] = r[shift + i] - q * b[i]
        r.pop()
        _trim(r)
    return r


def _divide_exact(a: Sequence, b: Sequence) -> list:
    """Quotient of an exact division (remainder assumed zero)."""
    r = list(a)
    db = len(b) - 1
    q = [Fraction(0)] * (len(a) - db)
    while len(r) - 1 >= db:
        c = r[-1] / b[-1]
        shift = len(r) - 1 - db
        q[shift] = c
        for i in range(db):
            r[shift + i] -= c * b[i]
        r.pop()
    return q


def _normalize(cs: list) -> list:
    # Positive rescaling keeps the chain a Sturm chain.
    lc = cs[-1]
    if isinstance(lc, Fraction):
        return [c / abs(lc) for c in cs]
    k = lc.exponent()
    return [c.ldexp(-k) for c in cs]


def sturm_chain(cs: Sequence) -> list[list]:
    """Sturm sequence ``p, p', -rem(p, p'), ...`` ending at the gcd of ``p`` and ``p'``."""
    seq = [list(cs)]
    if len(cs) > 1:
        seq.append(_trim(_derivative(cs)))
        while len(seq[-1]) > 1:
            r = _rem(seq[-2], seq[-1])
            if not r:
                break
            seq.append(_normalize([-c for c in r]))
    return seq


def _taylor_shift(cs: Sequence, a) -> list:
    """Coefficients of ``p(a + h)`` in ``h``."""
    out = list(cs)
    n = len(out)
    for i in range(n - 1):
        for k in range(n - 2, i - 1, -1):
            out[k] = out[k] + a * out[k + 1]
    return out


def _side_sign(cs: Sequence, point, side: int) -> Sign:
    """Sign of ``p`` just right (side=+1) or left (side=-1) of ``point``; infinite points allowed."""
    if point == math.inf or point == -math.inf:
        s = _sign(cs[-1])
        if point == -math.inf and (len(cs) - 1) % 2:
            s = _flip(s)
        return s
    shifted = cs if _is_zero_point(point) else _taylor_shift(cs, point)
    for k, c in enumerate(shifted):
        s = _sign(c)
        if s is not Sign.ZERO:
            return _flip(s) if side < 0 and k % 2 else s
    return Sign.ZERO


def _is_zero_point(point) -> bool:
    if isinstance(point, CertifiedReal):
        return point.is_zero()
    return point == 0


def _flip(s: Sign) -> Sign:
    return {Sign.POSITIVE: Sign.NEGATIVE, Sign.NEGATIVE: Sign.POSITIVE}.get(s, s)


def _variations(signs: list[Sign]) -> int:
    nz = [s for s in signs if s is not Sign.ZERO]
    return sum(1 for u, v in zip(nz, nz[1:]) if u is not v)


def _count(cs: list, a, b) -> int:
    seq = sturm_chain(cs)
    if len(seq[-1]) > 1:
        # not squarefree: count the roots of p / gcd(p, p') instead
        if not isinstance(cs[0], Fraction):
            raise _Undecided
        reduced = _divide_exact(cs, seq[-1])
        return _count(reduced, a, b)
    va = _variations([_side_sign(p, a, +1) for p in seq])
    vb = _variations([_side_sign(p, b, -1) for p in seq])
    return va - vb


def _endpoint(x, exact: bool):
    if x == math.inf or x == -math.inf:
        return x
    if exact:
        if isinstance(x, CertifiedReal):
            return to_fraction(x)
        return Fraction(x)
    return x if isinstance(x, CertifiedReal) else CertifiedReal.exact(Fraction(x))


def sturm_count(p: RealPolynomial, interval=POSITIVE_AXIS) -> int | None:
    """Number of distinct real roots of ``p`` in the open interval ``(a, b)``.

    ``interval`` is a pair of endpoints (ints, Fractions, floats, balls or
    +-inf); the default is the open positive half-axis. Returns None when a
    required sign cannot be certified at the coefficients' precision.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no finite root count")
    a, b = interval
    exact = p.is_exact() and all(
        v in (math.inf, -math.inf) or not isinstance(v, CertifiedReal) or v.is_exact()
        for v in (a, b)
    )
    if exact:
        cs = p.to_fractions()
    else:
        cs = list(p.coeffs)
    a, b = _endpoint(a, exact), _endpoint(b, exact)
    try:
        if _sign(cs[-1]) is Sign.ZERO:
            raise _Undecided
        if len(cs) == 1:
            return 0
        return _count(cs, a, b)
    except _Undecided:
        return None
