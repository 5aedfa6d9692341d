"""
Numerical integration on the unit interval, the unit square and the unit
3- and 4-cubes.

Integrands receive each coordinate together with its exact complement so that
factors such as (1 - x)^(-d) stay accurate when x rounds to 1:

* 1D: ``f(x, xc)``
* 2D: ``f(x, y, xc, yc)`` with x a column and y a row, broadcast to a grid
* Monte Carlo: ``f(z, zc)`` with z of shape (dimension, n)
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from hyperverify.errors import NoConvergence
from hyperverify.special_core import EvalResult

logger = logging.getLogger(__name__)

DEFAULT_EXPONENT = -0.9
MAX_SPAN = 6.0
MIN_LEVEL_2D = 2
MAX_SHELLS = 1000
MC_BATCH_PAIRS = 2 ** 18
MIN_MC_SAMPLES = 10 ** 4
_TINY = 2.0 ** -53


@dataclass(frozen=True)
class QuadratureSpec:
    """
    dimension: 1 or 2.
    levels: finest refinement level, step 2^-levels in the transformed variable.
    endpoint_exponents: per axis a pair (λ0, λ1) for x^λ0 (1-x)^λ1 behaviour.
    corner_exponent: 2D only, behaviour r^λ at distance r from (1, 1).
    """

    dimension: int = 1
    levels: int = None
    target_tol: float = 1e-10
    endpoint_exponents: tuple = None
    corner_exponent: float = None

    def __post_init__(self):
        if self.dimension not in (1, 2):
            raise ValueError(f"quadrature dimension must be 1 or 2, got {self.dimension}")
        if self.levels is None:
            object.__setattr__(self, "levels", 8 if self.dimension == 1 else 5)
        if self.levels < 1:
            raise ValueError(f"levels must be >= 1, got {self.levels}")
        if self.endpoint_exponents is not None:
            exponents = tuple(tuple(float(lam) for lam in pair) for pair in self.endpoint_exponents)
            if len(exponents) != self.dimension:
                raise ValueError("one exponent pair per axis is required")
            if any(lam <= -1 for pair in exponents for lam in pair):
                raise ValueError(f"endpoint exponents must exceed -1, got {exponents}")
            object.__setattr__(self, "endpoint_exponents", exponents)
        if self.corner_exponent is not None and self.corner_exponent <= -2:
            raise ValueError(f"corner exponent must exceed -2, got {self.corner_exponent}")

    @property
    def min_exponent(self):
        if self.endpoint_exponents is None:
            return DEFAULT_EXPONENT
        return min(min(pair) for pair in self.endpoint_exponents)

    @property
    def span(self):
        """Half-width of the truncated transformed interval."""
        return min(MAX_SPAN, math.asinh(40.0 / (math.pi * (1.0 + min(self.min_exponent, 0.0)))))


@dataclass(frozen=True)
class MCSpec:
    dimension: int = 4
    samples: int = 10 ** 6
    seed: int = 42
    stratification: bool = True

    def __post_init__(self):
        if self.dimension not in (3, 4):
            raise ValueError(f"Monte Carlo dimension must be 3 or 4, got {self.dimension}")
        if self.samples < MIN_MC_SAMPLES:
            raise ValueError(f"at least {MIN_MC_SAMPLES} samples are required, got {self.samples}")


def _nodes(level, span):
    """tanh-sinh nodes on (0, 1) with complements and weights at step 2^-level."""
    h = 2.0 ** -level
    n = math.ceil(span / h)
    t = np.arange(-n, n + 1) * h
    s = np.pi * np.sinh(t)
    x = special.expit(s)
    xc = special.expit(-s)
    w = h * np.pi * np.cosh(t) * x * xc
    keep = w > 0
    return x[keep], xc[keep], w[keep]


def _checked_sum(values, weights):
    total = np.sum(values * weights)
    if not np.isfinite(total):
        raise NoConvergence("integrand produced non-finite values on the quadrature nodes")
    return float(total)


def integrate_1d(f, spec=None):
    spec = spec or QuadratureSpec()
    span = spec.span
    previous, evaluations = None, 0
    for level in range(spec.levels + 1):
        x, xc, w = _nodes(level, span)
        estimate = _checked_sum(f(x, xc), w)
        evaluations += x.size
        if previous is not None:
            error = abs(estimate - previous)
            if level >= min(3, spec.levels) and error <= spec.target_tol * max(abs(estimate), 1e-300):
                return EvalResult(estimate, error, evaluations, True)
        previous = estimate
    raise NoConvergence(
        f"1D quadrature reached level {spec.levels} with error {error:.3g} "
        f"above tolerance {spec.target_tol:g}"
    )


def _square(f, u_range, v_range, level, span):
    """Tensor rule on a square given in complement coordinates u = 1-x, v = 1-y."""
    xi, xic, w = _nodes(level, span)
    (u0, u1), (v0, v1) = u_range, v_range
    du, dv = u1 - u0, v1 - v0
    # x = 1 - u with u = u0 + du * xi, written so both x and 1-x stay exact
    x, xc = (1.0 - u1) + du * xic, u0 + du * xi
    y, yc = (1.0 - v1) + dv * xic, v0 + dv * xi
    values = f(x[:, None], y[None, :], xc[:, None], yc[None, :])
    return du * dv * _checked_sum(values, w[:, None] * w[None, :]), xi.size ** 2


def _refined_square(f, u_range, v_range, spec, floor):
    previous, evaluations = None, 0
    for level in range(MIN_LEVEL_2D, spec.levels + 1):
        estimate, used = _square(f, u_range, v_range, level, spec.span)
        evaluations += used
        if previous is not None:
            error = abs(estimate - previous)
            if error <= max(spec.target_tol * abs(estimate), floor):
                return estimate, error, evaluations
        previous = estimate
    raise NoConvergence(
        f"2D cell {u_range}x{v_range} reached level {spec.levels} with error {error:.3g}"
    )


def integrate_2d(f, spec=None):
    """
    Integrate over [0, 1]^2 by dyadic shells max(1-x, 1-y) in [s, 2s] around
    the corner (1, 1), each split into three squares.

    Shell contributions shrink like 2^-(2+λ) per shell for a corner behaviour
    r^λ; summation stops once the geometric tail drops below a tenth of the
    tolerance and the tail estimate is added to the result.
    """
    spec = spec or QuadratureSpec(dimension=2)
    if spec.dimension != 2:
        raise ValueError("integrate_2d needs a two-dimensional QuadratureSpec")
    if spec.levels <= MIN_LEVEL_2D:
        raise ValueError(f"2D quadrature needs levels > {MIN_LEVEL_2D}, got {spec.levels}")
    corner = 0.0 if spec.corner_exponent is None else spec.corner_exponent
    ratio = 2.0 ** -(2.0 + corner)

    total, error, evaluations, floor = 0.0, 0.0, 0, 0.0
    last = []
    for shell in range(MAX_SHELLS):
        s = 2.0 ** -(shell + 1)
        contribution = 0.0
        for u_range, v_range in (((s, 2 * s), (0.0, s)), ((0.0, s), (s, 2 * s)), ((s, 2 * s), (s, 2 * s))):
            value, err, used = _refined_square(f, u_range, v_range, spec, floor)
            contribution += value
            error += err
            evaluations += used
        total += contribution
        floor = 0.1 * spec.target_tol * abs(total)
        last.append(abs(contribution))
        if len(last) >= 3:
            tail = max(last[-2] * ratio, last[-1]) * ratio / (1.0 - ratio)
            if tail <= 0.1 * spec.target_tol * max(abs(total), 1e-300):
                sign = 1.0 if contribution >= 0 else -1.0
                logger.debug("2D quadrature stopped after %d shells, tail %.3g", shell + 1, tail)
                return EvalResult(total + sign * tail, error + tail, evaluations, True)
    raise NoConvergence(f"2D quadrature did not settle within {MAX_SHELLS} corner shells")


def mc_integrate(f, spec=None):
    """
    Seeded Monte Carlo over [0, 1]^dimension with antithetic pairs u, 1-u and,
    optionally, stratification of the first coordinate within each batch.
    abs_error is three standard errors of the mean.
    """
    spec = spec or MCSpec()
    rng = np.random.default_rng(spec.seed)
    pairs_left = max(spec.samples // 2, 1)
    count, mean, m2 = 0, 0.0, 0.0
    while pairs_left > 0:
        n = min(MC_BATCH_PAIRS, pairs_left)
        u = rng.random((spec.dimension, n))
        if spec.stratification:
            u[0] = (rng.permutation(n) + u[0]) / n
        z = np.clip(u, _TINY, 1.0)
        zc = np.clip(1.0 - u, _TINY, 1.0)
        pair_means = 0.5 * (f(z, zc) + f(zc, z))
        if not np.all(np.isfinite(pair_means)):
            logger.warning("Monte Carlo integrand produced non-finite values")
            return EvalResult(math.nan, math.inf, 2 * count, False)
        # Chan et al. parallel variance update
        batch_mean = float(np.mean(pair_means))
        batch_m2 = float(np.sum((pair_means - batch_mean) ** 2))
        total = count + n
        delta = batch_mean - mean
        mean += delta * n / total
        m2 += batch_m2 + delta ** 2 * count * n / total
        count = total
        pairs_left -= n
    variance = m2 / (count - 1) if count > 1 else 0.0
    std_error = math.sqrt(variance / count)
    return EvalResult(mean, 3.0 * std_error, 2 * count, True)
