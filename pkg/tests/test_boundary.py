import math
import warnings
from fractions import Fraction

import mpmath
import pytest

from koebe.arith import CertifiedReal, pi
from koebe.boundary import min_distance, modulus, sample_curve, typically_real_check
from koebe.families import FamilySpec, pnew_coeffs, suffridge_coeffs
from koebe.polynomial import RealPolynomial
from koebe.radius import upper_bound_pn


def test_sample_curve_unit_circle():
    c = sample_curve(pnew_coeffs(1), 8)
    assert len(c.samples) == 8
    for t, re, im, a in c.samples:
        assert a.overlaps(1)
        assert abs(float(re) - math.cos(float(t))) < 1e-15


def test_sample_curve_p2_at_pi():
    c = sample_curve(pnew_coeffs(2), 16, FamilySpec("pnew", 2))
    t, re, im, a = c.samples[8]
    assert t.overlaps(pi())
    assert re.overlaps(CertifiedReal.exact(Fraction(-1, 2))) and im.contains_zero()
    assert c.polynomial_id.label == "pnew(N=2)"


def test_sample_curve_symmetry_and_order():
    c = sample_curve(suffridge_coeffs(5), 64)
    ts = [float(s[0]) for s in c.samples]
    assert all(a < b for a, b in zip(ts, ts[1:]))
    for j in range(1, 32):
        a, b = c.samples[j], c.samples[64 - j]
        assert a[1].mid == b[1].mid and a[2].mid == mpmath.libmp.mpf_neg(b[2].mid)
    with pytest.raises(ValueError):
        sample_curve(pnew_coeffs(2), 4)


def test_curve_dense_minimum_s3():
    c = sample_curve(suffridge_coeffs(3), 4096)
    i = min(range(4096), key=lambda j: float(c.samples[j][3]))
    assert abs(float(c.samples[i][3]) - 0.3849) < 1e-4
    assert abs(float(c.samples[i][0]) - math.pi) > 0.1


def test_min_distance_examples():
    r = min_distance(pnew_coeffs(4))
    assert r.distance.overlaps(CertifiedReal.exact(Fraction(1, 3)))
    assert r.attained_at_minus1 and r.converged
    s = min_distance(suffridge_coeffs(3))
    assert abs(float(s.distance) - 0.38490017945975) < 1e-12
    assert not s.attained_at_minus1
    one = min_distance(pnew_coeffs(1))
    assert one.distance.overlaps(1)
    with pytest.raises(ValueError):
        min_distance(pnew_coeffs(3), grid=10)


def test_min_distance_odd_suffridge_off_minus_one():
    for N in (3, 5):
        assert not min_distance(suffridge_coeffs(N)).attained_at_minus1


@pytest.mark.parametrize("N", [2, 3, 5, 8, 13, 21, 34, 51])
def test_min_distance_pnew_at_minus_one(N):
    r = min_distance(pnew_coeffs(N))
    assert r.attained_at_minus1
    assert r.distance.overlaps(upper_bound_pn(N))


def test_min_distance_not_above_samples():
    p = suffridge_coeffs(4)
    r = min_distance(p)
    for _, _, _, a in sample_curve(p, 256).samples:
        assert mpmath.libmp.mpf_le(r.distance.lower(), a.upper())


def test_refinement_failure_is_reported():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        r = min_distance(pnew_coeffs(3), refine_tol=0.0)
    assert not r.converged
    assert any(issubclass(x.category, RuntimeWarning) for x in w)


def test_typically_real():
    for N in range(1, 52):
        assert typically_real_check(pnew_coeffs(N))
    assert typically_real_check(pnew_coeffs(2)).ok
    bad = typically_real_check(RealPolynomial.from_values([0, 1, -1]))
    assert not bad
    assert 0 < bad.witness < math.pi / 3


def test_modulus_contains_zero_case():
    z = CertifiedReal.from_interval(CertifiedReal.exact(-1).mid, CertifiedReal.exact(1).mid)
    from koebe.arith import CertifiedComplex
    m = modulus(CertifiedComplex(z, z))
    assert mpmath.libmp.mpf_sign(m.lower()) >= 0 and m.contains_zero()
