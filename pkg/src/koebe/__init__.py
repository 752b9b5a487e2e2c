"""Certified computations around the Koebe quarter theorem for polynomials.

Ball arithmetic (:mod:`koebe.arith`), coefficient families
(:mod:`koebe.families`), closed-form boundary values (:mod:`koebe.closedform`),
the half-line pullback and Sturm certification (:mod:`koebe.pullback`,
:mod:`koebe.sturm`), radius bounds (:mod:`koebe.radius`) and boundary curves
(:mod:`koebe.boundary`).
"""

from .arith import CertifiedComplex, CertifiedReal, Sign, certified_sign, pi, trig_constant
from .boundary import BoundaryCurve, MinDistanceResult, min_distance, sample_curve, typically_real_check
from .closedform import eval_direct, eval_theorem1, imag_part, modulus_sq_theorem2
from .families import (
    FamilySpec,
    alexander_coeffs,
    egervary_szasz_bk,
    egervary_szasz_eval,
    fejer_coeffs,
    fejer_kernel,
    pnew_coeffs,
    suffridge_coeffs,
)
from .polynomial import RealPolynomial
from .pullback import (
    PullbackError,
    UnivalenceCertificate,
    Verdict,
    certify_univalence,
    delta_n,
    pullback_tn,
    strip_zero_root,
)
from .radius import RadiusReport, lower_bound_rs, psi_n, radius_table, suffridge_value, upper_bound_pn
from .sturm import sturm_count

__version__ = "0.1.0"
