"""
Gauss 2F1 on z < 1 and generalized pFq at unit argument.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from hyperverify.errors import DomainError, InvalidParams, NoConvergence
from hyperverify.special_core import (
    Affine,
    EvalResult,
    gamma_ratio,
    nearest_pole,
)

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps
DIRECT_SERIES_MAX_Z = 0.6
NEAR_INTEGER_MARGIN = 1e-3
DEFAULT_TOL = 1e-12
MAX_TERMS = 2 ** 20
SMALL_MARGIN = 0.1


@dataclass(frozen=True)
class PFQParams:
    upper: tuple
    lower: tuple

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(float(a) for a in self.upper))
        object.__setattr__(self, "lower", tuple(float(b) for b in self.lower))

    @property
    def margin(self):
        return convergence_margin(self)

    def __str__(self):
        fmt = lambda xs: ", ".join(f"{x:.17g}" for x in xs)
        return f"{len(self.upper)}F{len(self.lower)}({fmt(self.upper)}; {fmt(self.lower)}; 1)"


@dataclass(frozen=True)
class AffineParams:
    """pFq parameter lists whose entries are affine in d."""

    upper: tuple
    lower: tuple

    @classmethod
    def of(cls, upper, lower):
        return cls(tuple(Affine.parse(a) for a in upper), tuple(Affine.parse(b) for b in lower))

    def at(self, d):
        return PFQParams(tuple(a(d) for a in self.upper), tuple(b(d) for b in self.lower))

    def margin(self):
        coeff = sum(b.coeff for b in self.lower) - sum(a.coeff for a in self.upper)
        const = sum(b.const for b in self.lower) - sum(a.const for a in self.upper)
        return Affine(coeff, const)


def convergence_margin(params):
    return sum(params.lower) - sum(params.upper)


def _terminating_order(upper):
    orders = [-n for n in (nearest_pole(a) for a in upper) if n is not None]
    return min(orders) if orders else None


def _snap(params, order):
    return [float(-order) if nearest_pole(a) == -order else a for a in params]


def _check_lower(lower, order):
    for b in lower:
        n = nearest_pole(b)
        if n is not None and (order is None or order > -n):
            raise InvalidParams(f"lower parameter {b!r} hits a pole before the series terminates")


# -- Gauss 2F1 ---------------------------------------------------------------


def _series_2f1(a, b, c, z, max_terms=10_000):
    """Direct power series, vectorised over z; returns (value, error)."""
    total = np.ones_like(z)
    term = np.ones_like(z)
    small_streak = 0
    for k in range(max_terms):
        term = term * ((a + k) * (b + k) / ((c + k) * (k + 1.0))) * z
        total = total + term
        if not np.any(term):
            return total, 4 * _EPS * np.abs(total) * (k + 1)
        if np.all(np.abs(term) <= _EPS * np.abs(total)):
            small_streak += 1
            if small_streak >= 2 and k + 1 > abs(a) + abs(b):
                rho = np.minimum(np.abs(z) * 1.05, 0.99)
                return total, np.abs(term) * rho / (1 - rho) + 4 * _EPS * np.abs(total) * (k + 1)
        else:
            small_streak = 0
    raise NoConvergence(f"2F1({a}, {b}; {c}; z) series did not converge in {max_terms} terms")


def _log_case_2f1(a, b, w):
    """2F1(a, b; a+b; 1-w) through the digamma expansion about w = 0."""
    prefactor = gamma_ratio([a + b], [a, b]).value
    log_w = np.log(w)
    total = np.zeros_like(w)
    coeff = 1.0
    power = np.ones_like(w)
    for n in range(10_000):
        psi = 2 * special.digamma(n + 1) - special.digamma(a + n) - special.digamma(b + n)
        term = coeff * (psi - log_w) * power
        total = total + term
        if n > abs(a) + abs(b) and np.all(np.abs(term) <= _EPS * np.abs(total)):
            return prefactor * total, 8 * _EPS * np.abs(prefactor * total) * (n + 1)
        coeff *= (a + n) * (b + n) / (n + 1.0) ** 2
        power = power * w
    raise NoConvergence(f"logarithmic 2F1({a}, {b}; {a + b}) expansion did not converge")


def _connection_2f1(a, b, c, w):
    """2F1(a, b; c; 1-w) for small w by the z -> 1-z connection formula."""
    m = c - a - b
    if m == 0.0:
        return _log_case_2f1(a, b, w)
    if abs(m - round(m)) < NEAR_INTEGER_MARGIN:
        value = special.hyp2f1(a, b, c, 1.0 - w)
        return value, 1e-10 * np.abs(value)
    g1 = gamma_ratio([c, m], [c - a, c - b])
    g2 = gamma_ratio([c, -m], [a, b])
    f1, e1 = _series_2f1(a, b, 1.0 - m, w) if g1.value else (np.zeros_like(w), 0.0)
    f2, e2 = _series_2f1(c - a, c - b, 1.0 + m, w) if g2.value else (np.zeros_like(w), 0.0)
    wm = w ** m
    value = g1.value * f1 + g2.value * wm * f2
    scale = np.abs(g1.value * f1) + np.abs(g2.value * wm * f2)
    error = abs(g1.value) * e1 + abs(g2.value) * wm * e2 + 8 * _EPS * scale
    return value, error


def _gauss_2f1(a, b, c, z, zc):
    order = _terminating_order([a, b])
    _check_lower([c], order)
    if order is not None:
        a, b = _snap([a, b], order)
        value, error = _series_2f1(a, b, c, z, max_terms=order + 2)
        return value, error

    value = np.empty_like(z)
    error = np.empty_like(z)
    negative = z < 0
    direct = (z >= 0) & (z <= DIRECT_SERIES_MAX_Z)
    near_one = z > DIRECT_SERIES_MAX_Z
    if np.any(negative):
        # Pfaff: (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)), z/(z-1) has complement 1/(1-z)
        zn, zcn = z[negative], zc[negative]
        inner, inner_err = _gauss_2f1(a, c - b, c, -zn / zcn, 1.0 / zcn)
        scale = zcn ** (-a)
        value[negative] = scale * inner
        error[negative] = scale * inner_err + 4 * _EPS * np.abs(scale * inner)
    if np.any(direct):
        value[direct], error[direct] = _series_2f1(a, b, c, z[direct])
    if np.any(near_one):
        value[near_one], error[near_one] = _connection_2f1(a, b, c, zc[near_one])
    return value, error


def gauss_2f1_array(a, b, c, z, zc=None):
    """
    2F1(a, b; c; z) elementwise for z < 1.

    zc, when given, is the exact value of 1 - z and is used near z = 1 where
    forming 1 - z would cancel.
    """
    z = np.asarray(z, dtype=float)
    zc = 1.0 - z if zc is None else np.asarray(zc, dtype=float)
    z, zc = np.broadcast_arrays(z, zc)
    flat_z, flat_zc = z.ravel().copy(), zc.ravel().copy()
    if np.any(flat_zc <= 0):
        raise DomainError("2F1 evaluation needs z < 1")
    value, _ = _gauss_2f1(a, b, c, flat_z, flat_zc)
    return value.reshape(z.shape)


def gauss_2f1(a, b, c, z, zc=None):
    """Scalar 2F1(a, b; c; z) with an error estimate."""
    if z >= 1 or (zc is not None and zc <= 0):
        raise DomainError(f"2F1 evaluation needs z < 1, got {z!r}")
    zc = 1.0 - z if zc is None else zc
    value, error = _gauss_2f1(a, b, c, np.array([float(z)]), np.array([float(zc)]))
    return EvalResult(float(value[0]), float(error[0]))


def gauss_sum(a, b, c):
    """2F1(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))."""
    if c - a - b <= 0:
        raise DomainError(f"Gauss sum needs c - a - b > 0, got {c - a - b!r}")
    return gamma_ratio([c, c - a - b], [c - a, c - b])


# -- pFq(1) -------------------------------------------------------------------


def _term_block(upper, lower, k0, size, t0):
    """Terms t_k0 .. t_(k0+size-1) given t_k0, plus t_(k0+size)."""
    k = np.arange(k0, k0 + size, dtype=float)
    ratios = np.prod(upper[:, None] + k, axis=0) / (np.prod(lower[:, None] + k, axis=0) * (k + 1.0))
    running = t0 * np.cumprod(ratios)
    block = np.concatenate(([t0], running[:-1]))
    return block, running[-1]


def _extrapolate(points, s):
    """Limit of partial sums S_M = S - A M^-s - B M^-(s+1) through three points."""
    m_last = points[-1][0]
    rows, rhs = [], []
    for m, partial in points:
        ratio = m / m_last
        rows.append([1.0, -(ratio ** -s), -(ratio ** -(s + 1))])
        rhs.append(partial)
    return float(np.linalg.solve(np.array(rows), np.array(rhs))[0])


def pfq_at_1(params, tol=DEFAULT_TOL, max_terms=MAX_TERMS):
    upper = np.array(params.upper, dtype=float)
    lower = np.array(params.lower, dtype=float)
    order = _terminating_order(upper)
    _check_lower(lower, order)

    if order is not None:
        upper = np.array(_snap(upper, order))
        block, _ = _term_block(upper, lower, 0, order + 1, 1.0)
        value = math.fsum(block)
        return EvalResult(value, 4 * _EPS * float(np.sum(np.abs(block))), order + 1, True)

    p, q = len(upper), len(lower)
    if p > q + 1:
        raise InvalidParams(f"non-terminating {p}F{q} diverges at unit argument")
    s = convergence_margin(params)
    if p == q + 1 and s <= 0:
        raise NoConvergence(f"{params} has convergence margin {s:.6g} <= 0")

    partial, abs_sum, k, t, size = [], 0.0, 0, 1.0, 64
    total, estimate, error = 0.0, 0.0, math.inf
    while k < max_terms:
        block, t = _term_block(upper, lower, k, size, t)
        total += float(np.sum(block))
        abs_sum += float(np.sum(np.abs(block)))
        k += size
        size = k
        partial.append((k, total))
        rounding = 8 * _EPS * abs_sum

        if p <= q:
            estimate, error = total, abs(t) * 2 + rounding
        elif len(partial) >= 4:
            estimate = _extrapolate(partial[-3:], s)
            error = abs(estimate - _extrapolate(partial[-4:-1], s)) + rounding
            if s < SMALL_MARGIN:
                error *= 10
        else:
            continue
        if error <= tol * abs(estimate) or estimate == 0.0 and error <= tol:
            logger.debug("%s summed with %d terms, error %.3g", params, k, error)
            return EvalResult(estimate, error, k, True)

    if error <= 1e-6 * abs(estimate):
        logger.warning("%s: term cap %d reached, error %.3g above tolerance", params, k, error)
        return EvalResult(estimate, error, k, False)
    raise NoConvergence(f"{params}: term cap {max_terms} reached with error {error:.3g}")
