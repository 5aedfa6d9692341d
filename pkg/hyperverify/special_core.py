"""
Gamma-function machinery shared by every closed form in the package.

Gamma ratios are evaluated in log space with explicit sign tracking so that
prefactors such as Γ(1-d)/Γ(2-2d) or Γ(3-3d)Γ(4-5d)/(Γ(4-4d)Γ(5-5d)) never
overflow and so that poles are detected instead of silently evaluated.
"""
import logging
import math
import re
from dataclasses import dataclass, field

import numpy as np
from scipy import special

from hyperverify.errors import DivergentError, DomainError, PoleError

logger = logging.getLogger(__name__)

POLE_SNAP = 1e-9
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class EvalResult:
    """Value of a series, quadrature or closed form together with its error estimate."""

    value: float
    abs_error: float = 0.0
    terms_used: int = 0
    converged: bool = True

    def __add__(self, other):
        other = _as_result(other)
        return EvalResult(
            self.value + other.value,
            self.abs_error + other.abs_error,
            self.terms_used + other.terms_used,
            self.converged and other.converged,
        )

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return EvalResult(-self.value, self.abs_error, self.terms_used, self.converged)

    def __sub__(self, other):
        return self + (-_as_result(other))

    def __rsub__(self, other):
        return _as_result(other) - self

    def __mul__(self, other):
        other = _as_result(other)
        return EvalResult(
            self.value * other.value,
            abs(self.value) * other.abs_error + abs(other.value) * self.abs_error,
            self.terms_used + other.terms_used,
            self.converged and other.converged,
        )

    def __rmul__(self, other):
        return self.__mul__(other)


def _as_result(value):
    if isinstance(value, EvalResult):
        return value
    return EvalResult(float(value))


@dataclass(frozen=True)
class SignedLog:
    log_magnitude: float
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ValueError(f"sign must be -1, 0 or +1, got {self.sign}")
        if self.sign != 0 and not math.isfinite(self.log_magnitude):
            raise ValueError("log_magnitude must be finite for a non-zero value")

    @property
    def value(self):
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_magnitude)


def nearest_pole(x):
    """Return the non-positive integer within POLE_SNAP of x, or None."""
    n = round(x)
    if n <= 0 and abs(x - n) <= POLE_SNAP:
        return int(n)
    return None


def ln_gamma_signed(x):
    if nearest_pole(x) is not None:
        raise PoleError(f"Gamma has a pole at {x!r}")
    return SignedLog(float(special.gammaln(x)), int(special.gammasgn(x)))


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1) by direct product."""
    if k < 0:
        raise ValueError(f"pochhammer needs k >= 0, got {k}")
    n = nearest_pole(a)
    if n is not None and -n < k:
        return 0.0
    value = 1.0
    for j in range(k):
        value *= a + j
    return value


_TOKEN = re.compile(r"[+-]?[^+-]+")


@dataclass(frozen=True)
class Affine:
    """coeff * d + const."""

    coeff: float
    const: float

    def __call__(self, d):
        return self.coeff * d + self.const

    @classmethod
    def parse(cls, text):
        """Parse strings such as ``"2-2d"``, ``"2d-1"``, ``"d"`` or ``"0.5"``."""
        if isinstance(text, Affine):
            return text
        if isinstance(text, (int, float)):
            return cls(0.0, float(text))
        coeff, const = 0.0, 0.0
        for token in _TOKEN.findall(text.replace(" ", "")):
            if token.endswith("d"):
                head = token[:-1]
                coeff += {"": 1.0, "+": 1.0, "-": -1.0}.get(head, None) or float(head)
            else:
                const += float(token)
        return cls(coeff, const)

    def __str__(self):
        if self.coeff == 0:
            return f"{self.const:g}"
        c = "" if self.coeff == 1 else "-" if self.coeff == -1 else f"{self.coeff:g}"
        if self.const == 0:
            return f"{c}d"
        return f"{self.const:g}{'+' if self.coeff > 0 else ''}{c}d"


def _affines(items):
    return tuple(Affine.parse(item) for item in items)


@dataclass(frozen=True)
class GammaProduct:
    """
    constant * Π Γ(numerator) / Π Γ(denominator) * Π rational_num / Π rational_den,
    every argument an affine expression in d, negated when sign_flip is set.
    """

    numerator: tuple = ()
    denominator: tuple = ()
    rational_num: tuple = ()
    rational_den: tuple = ()
    sign_flip: bool = False
    constant: float = 1.0
    domain: tuple = field(default=(-math.inf, math.inf))

    @classmethod
    def of(cls, num=(), den=(), rat_num=(), rat_den=(), sign_flip=False, constant=1.0,
           domain=(-math.inf, math.inf)):
        return cls(_affines(num), _affines(den), _affines(rat_num), _affines(rat_den),
                   sign_flip, constant, domain)

    def __mul__(self, other):
        return GammaProduct(
            self.numerator + other.numerator,
            self.denominator + other.denominator,
            self.rational_num + other.rational_num,
            self.rational_den + other.rational_den,
            self.sign_flip != other.sign_flip,
            self.constant * other.constant,
            (max(self.domain[0], other.domain[0]), min(self.domain[1], other.domain[1])),
        )

    def __neg__(self):
        return GammaProduct(self.numerator, self.denominator, self.rational_num,
                            self.rational_den, not self.sign_flip, self.constant, self.domain)

    def __call__(self, d):
        return eval_gamma_product(self, d)


def gamma_ratio(num=(), den=(), constant=1.0):
    """Π Γ(num) / Π Γ(den) for plain real arguments."""
    return eval_gamma_product(GammaProduct.of(num, den, constant=constant), 0.0)


def eval_gamma_product(gp, d):
    lo, hi = gp.domain
    if not lo <= d <= hi:
        raise DomainError(f"d={d!r} outside gamma-product domain [{lo}, {hi}]")

    numerator_poles = [a(d) for a in gp.numerator if nearest_pole(a(d)) is not None]
    zero_rational_den = [a(d) for a in gp.rational_den if abs(a(d)) <= POLE_SNAP]
    if numerator_poles or zero_rational_den:
        raise DivergentError(
            f"gamma product diverges at d={d!r}: numerator poles {numerator_poles}, "
            f"vanishing rational denominators {zero_rational_den}"
        )
    if any(nearest_pole(a(d)) is not None for a in gp.denominator):
        return EvalResult(0.0)
    if gp.constant == 0.0 or any(abs(a(d)) <= POLE_SNAP for a in gp.rational_num):
        return EvalResult(0.0)

    log_total, sign, size = 0.0, -1 if gp.sign_flip else 1, 0.0
    for arg, power in [(a, 1) for a in gp.numerator] + [(a, -1) for a in gp.denominator]:
        term = ln_gamma_signed(arg(d))
        log_total += power * term.log_magnitude
        sign *= term.sign
        size += abs(term.log_magnitude) + 1.0
    for arg, power in [(a, 1) for a in gp.rational_num] + [(a, -1) for a in gp.rational_den]:
        x = arg(d)
        log_total += power * math.log(abs(x))
        sign *= 1 if x > 0 else -1
        size += 1.0
    log_total += math.log(abs(gp.constant))
    sign *= 1 if gp.constant > 0 else -1

    value = sign * math.exp(log_total)
    return EvalResult(value, abs(value) * 4 * _EPS * (1.0 + size))
