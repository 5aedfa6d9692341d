"""
Appell F1(α; β, β'; γ; x, y) by its double series and by its Euler-type
integral over [0, 1].
"""
import logging
from dataclasses import dataclass

import numpy as np

from hyperverify.errors import DomainError, InvalidParams, NoConvergence
from hyperverify.quadrature import QuadratureSpec, integrate_1d
from hyperverify.special_core import EvalResult, gamma_ratio, nearest_pole

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps
INTEGRAL_PREFERRED_ABOVE = 0.8
FIRST_SHELLS = 64
MAX_SHELLS = 4096


@dataclass(frozen=True)
class AppellParams:
    alpha: float
    beta: float
    beta_prime: float
    gamma: float
    x: float
    y: float

    def swapped(self):
        return AppellParams(self.alpha, self.beta_prime, self.beta, self.gamma, self.y, self.x)

    @property
    def radius(self):
        return max(abs(self.x), abs(self.y))

    @property
    def integral_ok(self):
        return self.alpha > 0 and self.gamma - self.alpha > 0 and self.x < 1 and self.y < 1


def _univariate_terms(b, z, n):
    """(b)_i z^i / i! for i < n."""
    i = np.arange(n - 1, dtype=float)
    return np.concatenate(([1.0], np.cumprod((b + i) * z / (i + 1.0))))


def _shells(p, n):
    """Sum of the series terms on each anti-diagonal i + j = m, m < n."""
    a = _univariate_terms(p.beta, p.x, n)
    b = _univariate_terms(p.beta_prime, p.y, n)
    m = np.arange(n - 1, dtype=float)
    outer = np.concatenate(([1.0], np.cumprod((p.alpha + m) / (p.gamma + m))))
    return outer * np.convolve(a, b)[:n]


def f1_series(p, tol=1e-14):
    """
    Double series summed over anti-diagonals i + j = m. The tail past shell m
    is bounded geometrically in ρ = max(|x|, |y|) once the shells decrease.
    """
    if p.radius >= 1:
        raise DomainError(f"F1 series needs |x|, |y| < 1, got x={p.x!r}, y={p.y!r}")
    order = nearest_pole(p.gamma)
    if order is not None:
        raise InvalidParams(f"F1 lower parameter {p.gamma!r} is a non-positive integer")

    rho = min(1.05 * p.radius, 0.995)
    n = FIRST_SHELLS
    while n <= MAX_SHELLS:
        shells = _shells(p, n)
        total = float(np.sum(shells))
        magnitudes = np.abs(shells[-4:])
        rounding = 4 * _EPS * float(np.sum(np.abs(shells)))
        if not np.any(magnitudes):
            return EvalResult(total, rounding, n, True)
        if np.all(np.diff(magnitudes) <= 0):
            tail = magnitudes[-1] * rho / (1.0 - rho)
            if tail <= tol * abs(total):
                return EvalResult(total, tail + rounding, n, True)
        n *= 2
    raise NoConvergence(f"F1 series for {p} did not settle within {MAX_SHELLS} shells")


def f1_integral(p, quad=None):
    """Γ(γ)/(Γ(α)Γ(γ-α)) ∫ u^(α-1) (1-u)^(γ-α-1) (1-ux)^(-β) (1-uy)^(-β') du."""
    if not p.integral_ok:
        raise DomainError(f"F1 integral needs α > 0, γ - α > 0 and x, y < 1, got {p}")
    alpha, gamma = p.alpha, p.gamma
    quad = quad or QuadratureSpec(
        dimension=1, target_tol=1e-12,
        endpoint_exponents=((alpha - 1.0, min(gamma - alpha - 1.0, 0.0)),),
    )

    def integrand(u, uc):
        # 1 - u x = (1 - x) + x (1 - u)
        return (u ** (alpha - 1.0) * uc ** (gamma - alpha - 1.0)
                * ((1.0 - p.x) + p.x * uc) ** -p.beta
                * ((1.0 - p.y) + p.y * uc) ** -p.beta_prime)

    integral = integrate_1d(integrand, quad)
    return gamma_ratio([gamma], [alpha, gamma - alpha]) * integral


def appell_f1(p, tol=1e-12):
    """Integral representation near the edge of the bidisk, series elsewhere."""
    if p.integral_ok and (p.radius > INTEGRAL_PREFERRED_ABOVE or p.radius >= 1):
        return f1_integral(p, QuadratureSpec(
            dimension=1, target_tol=tol,
            endpoint_exponents=((p.alpha - 1.0, min(p.gamma - p.alpha - 1.0, 0.0)),),
        ))
    return f1_series(p, tol)
