"""
Closed forms of the intermediate integrals I1, I2(a), I2(b), J1(a), J1(b), J2
and of the right side of the main identity, each as a sum of gamma products
times hypergeometric values at unit argument.

The ``*_before_*`` functions are the same quantities one rewriting step
earlier, so comparing them with the final forms checks that step.
"""
import logging

from hyperverify.errors import DomainError
from hyperverify.hypergeometric import AffineParams, pfq_at_1
from hyperverify.special_core import EvalResult, GammaProduct

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-13

F_A = AffineParams.of(["2-2d", 1, "d"], ["3-2d", "2-d"])
F_B = AffineParams.of(["2-2d", 1, "2d-1"], ["3-2d", "2-d"])
H = AffineParams.of([1, "d", "2-2d", "3-3d"], ["2-d", "3-2d", "4-4d"])
K = AffineParams.of(["2-2d", "3-3d", "4-5d"], ["4-4d", "5-5d"])

HALF_LEAD = GammaProduct.of(["1-d"], rat_den=["4-5d"], constant=0.5)
G_OVER_G2 = GammaProduct.of(["1-d"], ["2-2d"])
G3_OVER_G4 = GammaProduct.of(["3-3d"], ["4-4d"])
C = GammaProduct.of(["3-3d"], ["4-4d"], rat_den=["4-5d"])
X = GammaProduct.of(["1-d", "1-d", "2-2d", "2-2d", "2d-1", "3-3d"],
                    ["d", "d", "5-5d", "4-4d"], rat_den=["4-5d"])
SHIFT_RATIO = GammaProduct.of(["5-4d", "4-5d"], ["4-4d", "5-5d"])


def _term(prefactor, params, d, tol=DEFAULT_TOL):
    scale = prefactor(d)
    if scale.value == 0.0:
        return EvalResult(0.0)
    return scale * pfq_at_1(params.at(d), tol=tol)


def _check_unit_interval(d):
    if not 0 <= d < 1:
        raise DomainError(f"d must lie in [0, 1), got {d!r}")


def rhs_main(d, tol=DEFAULT_TOL):
    """
    Γ(1-d)/(2(4-5d)) [ Γ(1-d)/Γ(2-2d) 3F2(2-2d, 1, 2d-1; 3-2d, 2-d)
                       - (Γ(3-3d)/Γ(4-4d) - Γ(1-d)/Γ(2-2d)) 3F2(2-2d, 1, d; 3-2d, 2-d)
                       - Γ(3-3d)/Γ(4-4d) 4F3(1, d, 2-2d, 3-3d; 2-d, 3-2d, 4-4d) ]
    """
    _check_unit_interval(d)
    lead = HALF_LEAD(d)
    g_ratio = G_OVER_G2(d)
    g3_ratio = G3_OVER_G4(d)
    first = g_ratio * pfq_at_1(F_B.at(d), tol=tol)
    second = (g3_ratio - g_ratio) * pfq_at_1(F_A.at(d), tol=tol)
    third = g3_ratio * pfq_at_1(H.at(d), tol=tol)
    return lead * (first - second - third)


def i1(d):
    _check_unit_interval(d)
    return (_term(GammaProduct.of(["1-d", "3-3d"], ["4-4d"], rat_den=["1-d", "2-2d", "4-5d"]), F_A, d)
            - _term(GammaProduct.of(["1-d", "1-d", "1-d"], ["3-2d", "2-d"], rat_den=["4-5d"]), F_B, d))


def i1_before_a7(d):
    """I1 before both 3F2 are moved to the 2-d / 3-2d lower parameters; needs 1/2 < d < 1."""
    if not 0.5 < d < 1:
        raise DomainError(f"this form of I1 needs 1/2 < d < 1, got {d!r}")
    first = GammaProduct.of(["1-d", "2d-1", "3-3d"], ["2d", "4-4d"], rat_den=["d-1", "4-5d"])
    second = GammaProduct.of(["1-d", "1-d", "2d-1"], ["3-2d", "2d"], rat_den=["4-5d"])
    return (_term(first, AffineParams.of([1, "d", "2d-1"], ["2-d", "2d"]), d)
            + _term(second, AffineParams.of([1, "d", "2d-1"], ["3-2d", "2d"]), d))


def i2a(d):
    _check_unit_interval(d)
    return _term(X, K, d)


def i2a_before_a7(d):
    if not 0.5 < d < 1:
        raise DomainError(f"this form of I2(a) needs 1/2 < d < 1, got {d!r}")
    series = GammaProduct.of(["2d-1", "1-d", "1-d", "3d-2", "2-2d", "2-3d"], ["d", "d", "d", "5-5d"])
    constant = GammaProduct.of(["2d-1", "1-d", "1-d", "4-5d", "3-3d", "3d-2", "3d-2"],
                               ["5-5d", "d", "d", "d"])
    return _term(series, AffineParams.of(["2-2d", "2d-1", "3d-2"], ["d", "3d-1"]), d) + constant(d)


_I2B_LEAD = GammaProduct.of(["1-d", "2-2d", "3-3d"], ["3-2d", "4-4d"], rat_den=["d-1", "4-5d"])


def i2b(d):
    _check_unit_interval(d)
    return _term(_I2B_LEAD, H, d) + _term(X, K, d)


def i2b_before_a51(d):
    if not 0.5 < d < 1:
        raise DomainError(f"this form of I2(b) needs 1/2 < d < 1, got {d!r}")
    second = -GammaProduct.of(["1-d", "1-d", "1-2d", "2d", "3-3d"], ["3-2d", "d", "4-4d"],
                              rat_den=["4-5d"])
    return (_term(_I2B_LEAD, H, d)
            + _term(second, AffineParams.of(["d", "2-2d", "3-3d"], ["3-2d", "4-4d"]), d))


def j1a(d):
    _check_unit_interval(d)
    return _term(GammaProduct.of(["1-d", "2-d"], ["3-2d"], rat_den=["1-d", "1-d", "4-5d"]),
                 AffineParams.of([1, "d", "2-2d"], ["2-d", "3-2d"]), d)


def j1a_series(d):
    """J1(a) as the k-sum left by the z3 integration, with its (5-4d+k)/(4-4d+k) weights."""
    _check_unit_interval(d)
    lead = GammaProduct.of(["1-d", "2-d", "4-4d"], ["3-2d", "5-4d"], rat_den=["1-d", "1-d"])
    return _term(lead * SHIFT_RATIO,
                 AffineParams.of([1, "d", "2-2d", "4-4d", "5-4d"], ["2-d", "3-2d", "5-4d", "4-4d"]), d)


def j1b(d):
    _check_unit_interval(d)
    return _term(GammaProduct.of(["1-d", "3-3d"], ["4-4d"], rat_den=["1-d", "1-d", "4-5d"],
                                 constant=0.5), H, d)


def j1b_series(d):
    _check_unit_interval(d)
    lead = GammaProduct.of(["1-d", "2-2d", "3-3d"], ["3-2d", "5-4d"], rat_den=["1-d"])
    return _term(lead * SHIFT_RATIO,
                 AffineParams.of([1, "d", "2-2d", "3-3d", "5-4d"], ["2-d", "3-2d", "5-4d", "4-4d"]), d)


def j2(d):
    _check_unit_interval(d)
    return _term(GammaProduct.of(["1-d", "2-2d", "3-3d"], ["3-2d", "4-4d"], rat_den=["1-d", "4-5d"]),
                 H, d)


def assembled_main(d):
    """(1-d)^2 (J1(a) - J1(b) - J2 - I1 + I2(a) - I2(b))."""
    _check_unit_interval(d)
    parts = j1a(d) - j1b(d) - j2(d) - i1(d) + i2a(d) - i2b(d)
    return (1 - d) ** 2 * parts
