import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

from koebe.arith import CertifiedReal, Sign, pi, trig_constant
from koebe.closedform import (
    boundary_point,
    eval_direct,
    eval_theorem1,
    imag_part,
    modulus_sq_theorem2,
    nonnegative_product,
    value_at_minus_one,
)
from koebe.families import pnew_coeffs
from koebe.polynomial import RealPolynomial

from conftest import encloses, oracle_pnew, oracle_poly_on_circle

interior_t = st.floats(min_value=1e-3, max_value=3.1405, allow_nan=False)


def t_ball(t, prec=128):
    return CertifiedReal.exact(t, prec)


def test_eval_direct_small_cases():
    assert eval_direct(pnew_coeffs(1), pi()).re.overlaps(-1)
    v = eval_direct(pnew_coeffs(2), pi())
    assert v.re.overlaps(CertifiedReal.exact(Fraction(-1, 2))) and v.im.contains_zero()
    v = eval_direct(pnew_coeffs(4), pi())
    assert v.re.overlaps(CertifiedReal.exact(Fraction(-1, 3)))


@given(st.integers(1, 30), st.floats(-10, 10, allow_nan=False))
def test_eval_direct_conjugate_symmetry(N, t):
    p = pnew_coeffs(N)
    a = eval_direct(p, t_ball(t))
    b = eval_direct(p, -t_ball(t))
    assert a.re.mid == b.re.mid and a.im.mid == mpmath.libmp.mpf_neg(b.im.mid)
    assert a.re.rad == b.re.rad and a.im.rad == b.im.rad


@given(st.integers(1, 25), st.floats(-7, 7, allow_nan=False))
def test_eval_direct_vs_oracle(N, t):
    with mpmath.workdps(60):
        ref = oracle_poly_on_circle(oracle_pnew(N), mpmath.mpf(t))
        v = eval_direct(pnew_coeffs(N), t_ball(t))
        assert encloses(v.re, ref.real, 1e-45) and encloses(v.im, ref.imag, 1e-45)


def test_theorem1_examples():
    direct = eval_direct(pnew_coeffs(4), t_ball(1.0))
    assert eval_theorem1(4, 1.0).overlaps(direct)
    # P_3(-1) = -(3 - sqrt 5)/2, approached from inside (0, pi)
    v = eval_theorem1(3, pi())
    with mpmath.workdps(50):
        assert encloses(v.re, -(3 - mpmath.sqrt(5)) / 2)
    near = eval_theorem1(3, t_ball(3.14159))
    assert abs(float(near.re) + 0.3819660112501051) < 1e-4
    # the removable singularity t = 2 pi / 7 for N=5
    t = 2 * pi() / 7
    assert eval_theorem1(5, t).overlaps(eval_direct(pnew_coeffs(5), t))


@given(st.integers(1, 51), interior_t)
def test_theorem1_matches_direct(N, t):
    assert eval_theorem1(N, t).overlaps(eval_direct(pnew_coeffs(N), t_ball(t)))


@given(st.integers(1, 51), interior_t)
def test_theorem2_matches_direct(N, t):
    assert modulus_sq_theorem2(N, t).overlaps(eval_direct(pnew_coeffs(N), t_ball(t)).abs2())


def test_theorem2_examples():
    assert modulus_sq_theorem2(2, pi() / 2).overlaps(CertifiedReal.exact(Fraction(5, 4)))
    for t in (0.1, 1.0, 2.5):
        assert modulus_sq_theorem2(1, t).overlaps(1)


def test_outside_principal_range_uses_conjugation():
    for N in (3, 6):
        for t in (4.0, 5.5, -1.0, 7.5):
            assert eval_theorem1(N, t).overlaps(eval_direct(pnew_coeffs(N), t_ball(t)))


@given(st.integers(1, 51), interior_t)
def test_imag_part_nonnegative_and_matches(N, t):
    im = imag_part(N, t)
    assert im.sign() is not Sign.NEGATIVE
    assert mpmath.libmp.mpf_sign(im.lower()) >= 0
    assert im.overlaps(eval_direct(pnew_coeffs(N), t_ball(t)).im)


def test_imag_part_examples():
    assert imag_part(3, pi() / 2).overlaps(eval_direct(pnew_coeffs(3), pi() / 2).im)
    near_pi = imag_part(4, t_ball(3.1415))
    assert float(near_pi) < 1e-6
    with pytest.raises(ValueError):
        imag_part(3, 4.0)


def test_nonnegative_product():
    r = nonnegative_product([CertifiedReal.exact(2), CertifiedReal.exact(Fraction(1, 3))])
    assert r.overlaps(CertifiedReal.exact(Fraction(2, 3)))
    assert mpmath.libmp.mpf_sign(r.lower()) >= 0


@pytest.mark.parametrize("N", range(1, 52))
def test_value_at_minus_one(N):
    v = value_at_minus_one(N)
    c = trig_constant("cos", 1, N + 2)
    assert v.re.overlaps(-1 / (4 * c.sqr()))
    assert v.im.contains_zero()


def test_boundary_point():
    b = boundary_point(6, 1.2)
    assert b.modulus_sq.overlaps(b.value.abs2())
    assert b.t.overlaps(CertifiedReal.exact(1.2))


def test_seeded_identity_sweep_small():
    rng = random.Random(7)
    for N in (2, 9, 17):
        p = pnew_coeffs(N)
        for _ in range(16):
            t = t_ball(rng.uniform(0.001, 3.14))
            d = eval_direct(p, t)
            assert eval_theorem1(N, t).overlaps(d)
            assert modulus_sq_theorem2(N, t).overlaps(d.abs2())


def test_direct_generic_polynomial():
    p = RealPolynomial.from_values([0, 1, -1])
    with mpmath.workdps(40):
        v = eval_direct(p, t_ball(0.5))
        ref = mpmath.expj(0.5) - mpmath.expj(1.0)
        assert encloses(v.re, ref.real) and encloses(v.im, ref.imag)
