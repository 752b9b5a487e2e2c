"""Shared oracles.

Independent references are computed with ``mpmath.mp`` at high precision
(scalar floating point, no balls) or ``sympy`` in exact arithmetic; nothing
here imports the package's arithmetic internals.
"""

import mpmath
import pytest
from hypothesis import settings

settings.register_profile("ci", deadline=None, max_examples=60)
settings.load_profile("ci")

ORACLE_DPS = 80


@pytest.fixture
def mp80():
    with mpmath.workdps(ORACLE_DPS):
        yield mpmath.mp


def mpf_of(x):
    """High-precision midpoint of a ball (string round trip, no internals)."""
    return mpmath.mpf(x.to_str(60))


def encloses(ball, value, slack=0):
    """``value`` (mpmath number) lies in ``ball`` widened by ``slack``."""
    lo = mpmath.mp.make_mpf(ball.lower())
    hi = mpmath.mp.make_mpf(ball.upper())
    return lo - slack <= value <= hi + slack


def oracle_pnew(N):
    """P_N coefficients a_1..a_N from the cosine coefficients b_k, via mp."""
    m = N + 2
    s = mpmath.sin
    pi = mpmath.pi
    b = [mpmath.mpf(1)] + [((N - k + 3) * s((k + 1) * pi / m) - (N - k + 1) * s((k - 1) * pi / m))
                           / (m * s(pi / m)) for k in range(1, N + 1)]
    raw = [b[k] * s(k * pi / m) for k in range(1, N + 1)]
    return [c / raw[0] for c in raw]


def oracle_suffridge(N, j=1):
    s, pi = mpmath.sin, mpmath.pi
    return [mpmath.mpf(N - k + 1) / N * s(pi * k * j / (N + 1)) / s(pi * j / (N + 1))
            for k in range(1, N + 1)]


def oracle_poly_on_circle(coeffs_from_1, t):
    z = mpmath.expj(t)
    return mpmath.fsum(c * z ** (k + 1) for k, c in enumerate(coeffs_from_1))


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        ok, detail = RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
