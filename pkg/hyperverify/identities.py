"""
Registry of the identities along the derivation of the main double integral,
each with two independent evaluation paths, a validity domain in d and a
tolerance, plus the machinery to check them one at a time or over a grid.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass

from hyperverify import closed_forms
from hyperverify.appell import AppellParams, f1_integral, f1_series
from hyperverify.closed_forms import rhs_main
from hyperverify.config import RunConfig
from hyperverify.errors import DivergentError, DomainError, HyperVerifyError, UnknownIdentity
from hyperverify.hypergeometric import PFQParams, gauss_sum, pfq_at_1
from hyperverify.integrands import (
    brychkov_integrand,
    i1_integrand,
    j1_integrand,
    j2_integrand,
    j2_plane_corner_exponent,
    j2_plane_integrand,
    kernel_integrand,
    main_corner_exponent,
    main_integrand,
    quad4d_integrand,
    z4_integrand,
)
from hyperverify.quadrature import MCSpec, QuadratureSpec, integrate_1d, integrate_2d, mc_integrate
from hyperverify.special_core import POLE_SNAP
from hyperverify.transforms import (
    brychkov_a3,
    closed_a6,
    closed_a7,
    connection_a2,
    euler_a0,
    kernel_a1,
    kernel_a1_as_printed,
    pfaff_a0,
    thomae_apply,
)

logger = logging.getLogger(__name__)

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped-out-of-domain"
DIVERGENT = "divergent"
VERDICTS = (PASS, FAIL, SKIPPED, DIVERGENT)

TOL_ABS_FLOOR = 1e-14
POLE_BAND = 0.02
INTEGRAL_D_MAX = 0.78
MC_D_MAX = 0.45
KERNEL_P, KERNEL_Q = 0.7, 0.3
REPORT_COLUMNS = ("id", "d", "lhs", "lhs_err", "rhs", "rhs_err", "abs_diff", "rel_diff", "tol", "verdict")


@dataclass(frozen=True)
class Validity:
    """Interval of d minus excluded points; points are removed with a band of half-width ``band``."""

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = True
    excluded: tuple = ()
    band: float = POLE_SNAP

    def __contains__(self, d):
        if d < self.lo or d > self.hi:
            return False
        if (self.lo_open and d == self.lo) or (self.hi_open and d == self.hi):
            return False
        return all(abs(d - point) >= self.band for point in self.excluded)

    def __str__(self):
        text = f"{'(' if self.lo_open else '['}{self.lo:g}, {self.hi:g}{')' if self.hi_open else ']'}"
        if self.excluded:
            text += " minus " + ", ".join(f"{p:.6g}" for p in self.excluded)
        return text


UNIT = Validity(0.0, 1.0, excluded=(0.8,))
UPPER_HALF = Validity(0.5, 1.0, lo_open=True, excluded=(0.8,))
INTEGRAL_RANGE = Validity(0.0, INTEGRAL_D_MAX, hi_open=False, excluded=(0.8,), band=POLE_BAND)
MC_RANGE = Validity(0.0, MC_D_MAX, hi_open=False)


@dataclass(frozen=True)
class IdentityCheck:
    id: str
    description: str
    equation_ref: str
    lhs: object
    rhs: object
    validity: Validity
    default_tol: float = 1e-9
    poles: tuple = (0.8,)
    slow: bool = False
    exploratory: bool = False

    def __post_init__(self):
        inside = [p for p in self.poles if p in self.validity]
        if inside:
            raise ValueError(f"{self.id}: validity {self.validity} contains poles {inside}")


@dataclass(frozen=True)
class CheckReport:
    id: str
    d: float
    lhs: float
    lhs_err: float
    rhs: float
    rhs_err: float
    abs_diff: float
    rel_diff: float
    tol: float
    verdict: str
    note: str = ""

    def as_row(self):
        row = asdict(self)
        return {column: row[column] for column in REPORT_COLUMNS}


# -- integral-side evaluators --------------------------------------------------


def lhs_main(d, spec=None):
    """Main double integral by corner-shell quadrature, for 0 <= d <= 0.78."""
    if not 0 <= d <= INTEGRAL_D_MAX or abs(d - 0.8) < POLE_BAND:
        raise DomainError(f"main integral is evaluated for 0 <= d <= {INTEGRAL_D_MAX}, got {d!r}")
    edge = min(0.0, 1.0 - 2.0 * d)
    spec = spec or QuadratureSpec(
        dimension=2, target_tol=1e-10,
        endpoint_exponents=((0.0, edge), (0.0, edge)),
        corner_exponent=main_corner_exponent(d),
    )
    return integrate_2d(main_integrand(d), spec)


def j2_plane(d, spec=None):
    if not 0 <= d <= INTEGRAL_D_MAX:
        raise DomainError(f"J2 double integral is evaluated for 0 <= d <= {INTEGRAL_D_MAX}, got {d!r}")
    edge = min(0.0, 1.0 - 2.0 * d)
    spec = spec or QuadratureSpec(
        dimension=2, target_tol=1e-10,
        endpoint_exponents=((0.0, edge), (0.0, edge)),
        corner_exponent=j2_plane_corner_exponent(d),
    )
    return integrate_2d(j2_plane_integrand(d), spec)


def _euler_integral_2f1(d, z):
    """2F1(1, d; 2-d; z) from its Euler integral."""
    return f1_integral(AppellParams(1.0, d, 0.0, 2.0 - d, z, 0.0))


def _kernel_quadrature(d):
    spec = QuadratureSpec(target_tol=1e-12, endpoint_exponents=((0.0, 0.0),))
    return integrate_1d(kernel_integrand(KERNEL_P, KERNEL_Q, d), spec)


def _z4_quadrature(d):
    spec = QuadratureSpec(target_tol=1e-12, endpoint_exponents=((0.0, 0.0),))
    return integrate_1d(z4_integrand(0.5, 0.5, d), spec)


def _z4_appell(d):
    return f1_series(AppellParams(1.0, 2 * d, d, 3 - d, 0.5, 0.25)) * (1.0 / (2 - d))


def _brychkov_params(d):
    return (2 - 2 * d, 1 - d, 2 - 2 * d, 2 - d, d, 3 - 2 * d, 5 - 4 * d)


def _brychkov_quadrature(d):
    alpha = 2 - 2 * d
    spec = QuadratureSpec(target_tol=1e-11,
                          endpoint_exponents=((min(alpha - 1, 3 - 5 * d), 1 - d),))
    return integrate_1d(brychkov_integrand(*_brychkov_params(d)), spec)


def _monte_carlo(factory, dimension):
    def evaluate(d, config):
        spec = MCSpec(dimension=dimension, samples=config.mc_samples, seed=config.seed)
        return mc_integrate(factory(d), spec)
    return evaluate


def _source(upper, lower):
    return lambda d: PFQParams(tuple(f(d) for f in upper), tuple(f(d) for f in lower))


_A4_SOURCE = _source((lambda d: 1.0, lambda d: d, lambda d: 2 - 2 * d), (lambda d: 2 - d, lambda d: 3 - 2 * d))
_A51_SOURCE = _source((lambda d: 3 - 3 * d, lambda d: d, lambda d: 2 - 2 * d),
                      (lambda d: 3 - 2 * d, lambda d: 4 - 4 * d))


def _plain(func):
    """Adapt a function of d alone to the (d, config) evaluator signature."""
    return lambda d, config: func(d)


def _build_registry():
    checks = [
        IdentityCheck(
            "main", "main double integral against its three-term hypergeometric form", "2.00",
            lambda d, config: lhs_main(d), _plain(rhs_main), INTEGRAL_RANGE, default_tol=1e-6,
        ),
        IdentityCheck(
            "I1", "first part of the nested integral after the last 3F2 rewrite", "I1",
            _plain(closed_forms.i1_before_a7), _plain(closed_forms.i1), UPPER_HALF,
            poles=(0.5, 0.8),
        ),
        IdentityCheck(
            "I2a", "I2(a) before and after the 3F2 closed-form step", "I2a",
            _plain(closed_forms.i2a_before_a7), _plain(closed_forms.i2a),
            Validity(0.5, 1.0, lo_open=True, excluded=(2 / 3, 0.8)), poles=(0.5, 2 / 3, 0.8),
        ),
        IdentityCheck(
            "I2b", "I2(b) before and after the Thomae step", "I2b",
            _plain(closed_forms.i2b_before_a51), _plain(closed_forms.i2b), UPPER_HALF,
            poles=(0.5, 0.8),
        ),
        IdentityCheck(
            "J1a", "J1(a) k-series against its 3F2 form", "I1aa",
            _plain(closed_forms.j1a_series), _plain(closed_forms.j1a), UNIT,
        ),
        IdentityCheck(
            "J1b", "J1(b) k-series against its 4F3 form", "I1bb",
            _plain(closed_forms.j1b_series), _plain(closed_forms.j1b), UNIT,
        ),
        IdentityCheck(
            "J2", "J2 double integral against its 4F3 form", "I2cc",
            lambda d, config: j2_plane(d), _plain(closed_forms.j2), INTEGRAL_RANGE, default_tol=1e-6,
        ),
        IdentityCheck(
            "J2-equals-J1b", "J2 and J1(b) closed forms coincide", "I2cc",
            _plain(closed_forms.j2), _plain(closed_forms.j1b), UNIT, default_tol=1e-12,
        ),
        IdentityCheck(
            "assembly", "reassembly of the main result from the intermediates", "2.00",
            _plain(closed_forms.assembled_main), _plain(rhs_main),
            Validity(0.0, 1.0, lo_open=True, excluded=(0.5, 0.8)), poles=(0.0, 0.5, 0.8),
        ),
        IdentityCheck(
            "3.00", "Gauss sum at unit argument", "3.00",
            _plain(lambda d: pfq_at_1(PFQParams((2 * d - 1, d), (3 - d,)))),
            _plain(lambda d: gauss_sum(2 * d - 1, d, 3 - d)), Validity(0.0, 1.0), poles=(),
        ),
        IdentityCheck(
            "A.0-euler", "Euler transformation of 2F1(1, d; 2-d; 0.45)", "A.0",
            _plain(lambda d: _euler_integral_2f1(d, 0.45)),
            _plain(lambda d: euler_a0(1.0, d, 2 - d, 0.45)), Validity(0.0, 1.0), poles=(),
        ),
        IdentityCheck(
            "A.0-pfaff", "Pfaff transformation of 2F1(1, d; 2-d; -0.6)", "A.0",
            _plain(lambda d: _euler_integral_2f1(d, -0.6)),
            _plain(lambda d: pfaff_a0(1.0, d, 2 - d, -0.6)), Validity(0.0, 1.0), poles=(),
        ),
        IdentityCheck(
            "A.1", "pair kernel integral at p = 0.7, q = 0.3", "A.1",
            _plain(_kernel_quadrature),
            _plain(lambda d: kernel_a1(KERNEL_P, KERNEL_Q, d)), Validity(0.0, 1.0),
            default_tol=1e-8, poles=(),
        ),
        IdentityCheck(
            "A.1-printed", "pair kernel integral against the printed two-term form", "A.1",
            _plain(_kernel_quadrature),
            _plain(lambda d: kernel_a1_as_printed(KERNEL_P, KERNEL_Q, d)), Validity(0.0, 1.0),
            default_tol=1e-8, poles=(), exploratory=True,
        ),
        IdentityCheck(
            "A.2", "connection formula for 2F1(1, d; 2-d; 0.85)", "A.2",
            _plain(lambda d: _euler_integral_2f1(d, 0.85)),
            _plain(lambda d: connection_a2(1.0, d, 2 - d, 0.85)),
            Validity(0.0, 1.0, lo_open=True, excluded=(0.5,)), poles=(0.0, 0.5),
        ),
        IdentityCheck(
            "A.2a", "Appell F1 integral against its double series", "A.2a",
            _plain(lambda d: f1_integral(AppellParams(1.0, 2 * d, d, 3 - d, 0.5, 0.25))),
            _plain(lambda d: f1_series(AppellParams(1.0, 2 * d, d, 3 - d, 0.5, 0.25))),
            Validity(0.0, 1.0), poles=(),
        ),
        IdentityCheck(
            "A.2b", "z4 integral of I1 as an Appell F1", "A.2b",
            _plain(_z4_quadrature), _plain(_z4_appell), Validity(0.0, 1.0), poles=(),
        ),
        IdentityCheck(
            "A.3", "integral of a product of two 2F1 as two 4F3", "A.3",
            _plain(_brychkov_quadrature), _plain(lambda d: brychkov_a3(*_brychkov_params(d))),
            Validity(2 / 3, INTEGRAL_D_MAX, lo_open=True, hi_open=False, excluded=(0.8,), band=POLE_BAND),
            default_tol=1e-7, poles=(2 / 3, 0.8),
        ),
        IdentityCheck(
            "A.4", "Thomae transformation", "A.4",
            _plain(lambda d: pfq_at_1(_A4_SOURCE(d))),
            _plain(lambda d: thomae_apply("A.4", _A4_SOURCE(d)).evaluate()), Validity(0.0, 1.0), poles=(),
        ),
        IdentityCheck(
            "A.5", "Thomae transformation with a, c and e, f exchanged", "A.5",
            _plain(lambda d: pfq_at_1(_A4_SOURCE(d))),
            _plain(lambda d: thomae_apply("A.5", _A4_SOURCE(d)).evaluate()), Validity(0.0, 1.0), poles=(),
        ),
        IdentityCheck(
            "A.5-printed", "A.5 prefactor on the A.4 target tuple", "A.5",
            _plain(lambda d: pfq_at_1(_A4_SOURCE(d))),
            _plain(lambda d: thomae_apply("A.5-printed", _A4_SOURCE(d)).evaluate()),
            Validity(0.0, 1.0), poles=(),
            exploratory=True,
        ),
        IdentityCheck(
            "A.51", "Thomae transformation used for I2(b)", "A.51",
            _plain(lambda d: pfq_at_1(_A51_SOURCE(d))),
            _plain(lambda d: thomae_apply("A.51", _A51_SOURCE(d)).evaluate()),
            Validity(0.0, 1.0, lo_open=True), poles=(0.0,),
        ),
        IdentityCheck(
            "A.6", "3F2(a, b, c; a+1, b+1; 1) closed form", "A.6",
            _plain(lambda d: pfq_at_1(PFQParams((2 - 2 * d, d, 2 * d - 1), (3 - 2 * d, 1 + d)))),
            _plain(lambda d: closed_a6(2 - 2 * d, d, 2 * d - 1)),
            Validity(0.0, 1.0, excluded=(2 / 3,)), poles=(2 / 3,),
        ),
        IdentityCheck(
            "A.7", "3F2(a, b, c; a+1, e; 1) as a gamma term and a residual 3F2", "A.7",
            _plain(lambda d: pfq_at_1(PFQParams((2 * d - 1, 1.0, d), (2 * d, 2 - d)))),
            _plain(lambda d: closed_a7(2 * d - 1, 1.0, d, 2 - d)),
            Validity(0.0, 1.0, lo_open=True), poles=(0.0,),
        ),
        IdentityCheck(
            "quad4d", "four-fold nested integral against J1(a) - J1(b) - J2", "2.1",
            _monte_carlo(quad4d_integrand, 4),
            _plain(lambda d: closed_forms.j1a(d) - closed_forms.j1b(d) - closed_forms.j2(d)),
            MC_RANGE, poles=(), slow=True,
        ),
        IdentityCheck(
            "J1-integral", "three-fold J1 integral against J1(a) - J1(b)", "I1aa",
            _monte_carlo(j1_integrand, 3),
            _plain(lambda d: closed_forms.j1a(d) - closed_forms.j1b(d)),
            MC_RANGE, poles=(), slow=True,
        ),
        IdentityCheck(
            "J2-integral", "three-fold J2 integral against its 4F3 form", "I2cc",
            _monte_carlo(j2_integrand, 3), _plain(closed_forms.j2),
            MC_RANGE, poles=(), slow=True,
        ),
        IdentityCheck(
            "I1-integral", "three-fold I1 integral against its closed form", "I1",
            _monte_carlo(i1_integrand, 3), _plain(closed_forms.i1),
            UPPER_HALF, poles=(0.5, 0.8), slow=True, exploratory=True,
        ),
    ]
    ids = [c.id for c in checks]
    if len(set(ids)) != len(ids):
        raise ValueError("identity ids must be unique")
    return tuple(checks)


_REGISTRY = _build_registry()
_BY_ID = {c.id: c for c in _REGISTRY}


def registry():
    return list(_REGISTRY)


def get_identity(identity_id):
    try:
        return _BY_ID[identity_id]
    except KeyError:
        raise UnknownIdentity(f"unknown identity {identity_id!r}; known: {', '.join(sorted(_BY_ID))}")


def _report(identity, d, tol, verdict, note="", lhs=None, rhs=None):
    nan = math.nan
    if lhs is None or rhs is None:
        return CheckReport(identity.id, d, nan, nan, nan, nan, nan, nan, tol, verdict, note)
    abs_diff = abs(lhs.value - rhs.value)
    scale = max(abs(lhs.value), abs(rhs.value))
    rel_diff = abs_diff / scale if scale > 0 else abs_diff
    return CheckReport(identity.id, d, lhs.value, lhs.abs_error, rhs.value, rhs.abs_error,
                       abs_diff, rel_diff, tol, verdict, note)


def verdict_for(lhs, rhs, tol):
    abs_diff = abs(lhs.value - rhs.value)
    if not math.isfinite(abs_diff):
        return FAIL
    allowed = max(tol * max(abs(lhs.value), abs(rhs.value)),
                  lhs.abs_error + rhs.abs_error + TOL_ABS_FLOOR)
    return PASS if abs_diff <= allowed else FAIL


def check(identity_id, d, tol=None, config=None):
    """
    Evaluate both sides of one identity at d and classify the outcome.

    Out-of-domain points and divergences become verdicts; only an unknown id
    raises.
    """
    identity = get_identity(identity_id)
    config = config or RunConfig()
    tol = identity.default_tol if tol is None else tol
    if d not in identity.validity:
        return _report(identity, d, tol, SKIPPED, f"outside {identity.validity}")
    try:
        lhs = identity.lhs(d, config)
        rhs = identity.rhs(d, config)
    except DomainError as e:
        return _report(identity, d, tol, SKIPPED, str(e))
    except DivergentError as e:
        return _report(identity, d, tol, DIVERGENT, str(e))
    except HyperVerifyError as e:
        logger.error("%s at d=%g failed to evaluate: %s", identity.id, d, e)
        return _report(identity, d, tol, FAIL, str(e))

    verdict = verdict_for(lhs, rhs, tol)
    note = "" if lhs.converged and rhs.converged else "series returned below full accuracy"
    if verdict == FAIL:
        level = logging.WARNING if identity.exploratory else logging.ERROR
        logger.log(level, "%s at d=%g: lhs=%.17g rhs=%.17g", identity.id, d, lhs.value, rhs.value)
    return _report(identity, d, tol, verdict, note, lhs, rhs)


def check_multi_integral(identity_id, d, mc=None, tol=None):
    """
    Monte Carlo check of a multi-dimensional integral representation.

    Available ids are quad4d, J1-integral, J2-integral and I1-integral. J1(a)
    and J1(b) have no separate integral representations; the ids J1a-integral
    and J1b-integral are served jointly by J1-integral, which compares the
    three-fold J1 integral with J1(a) - J1(b).
    """
    identity = get_identity(identity_id)
    if not identity.slow:
        raise UnknownIdentity(f"{identity_id!r} is not a multi-dimensional integral check")
    mc = mc or MCSpec()
    return check(identity_id, d, tol, RunConfig(mc_samples=mc.samples, seed=mc.seed))


def selected_checks(include_slow=False, include_exploratory=False):
    return [c for c in _REGISTRY
            if (include_slow or not c.slow) and (include_exploratory or not c.exploratory)]


def sweep(grid=None, tol=None, config=None, include_slow=None):
    """
    Run every selected check at every grid point. A given tol caps each
    check's own default tolerance. Reports are sorted by id, then d.
    """
    config = config or RunConfig()
    grid = config.grid if grid is None else grid
    include_slow = config.slow_checks if include_slow is None else include_slow
    tasks = [(c, d) for c in selected_checks(include_slow) for d in grid]

    def run(task):
        identity, d = task
        effective = identity.default_tol if tol is None else min(tol, identity.default_tol)
        return check(identity.id, d, effective, config)

    if config.workers > 1:
        with ThreadPoolExecutor(max_workers=config.workers) as pool:
            reports = list(pool.map(run, tasks))
    else:
        reports = [run(task) for task in tasks]
    logger.debug("Sweep evaluated %d checks", len(reports))
    return sorted(reports, key=lambda r: (r.id, r.d))
