"""
Parameter rewrites and closed forms for hypergeometric functions at unit
argument, the Gauss transformations of 2F1, and the two integral formulas
(pair kernel and product of two 2F1) that the identity derivations lean on.

Rewrites are returned as data (prefactor and target tuples) so they can be
inspected, printed and evaluated independently of the source tuple.
"""
import logging
from dataclasses import dataclass

from hyperverify.errors import DomainError, InvalidParams
from hyperverify.hypergeometric import PFQParams, gauss_2f1, pfq_at_1
from hyperverify.special_core import EvalResult, GammaProduct, gamma_ratio

logger = logging.getLogger(__name__)

KERNEL_MIN_SEPARATION = 1e-6


@dataclass(frozen=True)
class Rewrite:
    """source = prefactor * target."""

    source: PFQParams
    prefactor: GammaProduct
    target: PFQParams

    def evaluate(self, tol=1e-12):
        scale = self.prefactor(0.0)
        if scale.value == 0.0:
            return scale
        return scale * pfq_at_1(self.target, tol=tol)


def _unpack_3f2(p):
    if len(p.upper) != 3 or len(p.lower) != 2:
        raise InvalidParams(f"a 3F2 tuple is required, got {p}")
    return p.upper + p.lower


def thomae_a4(p):
    a, b, c, e, f = _unpack_3f2(p)
    s = e + f - a - b - c
    return Rewrite(
        p,
        GammaProduct.of([s, e], [e - a, e + f - b - c]),
        PFQParams((a, f - c, f - b), (e + f - b - c, f)),
    )


def thomae_a5(p):
    """thomae_a4 with a, c and e, f exchanged: target (c, e-a, e-b; e+f-a-b, e)."""
    a, b, c, e, f = _unpack_3f2(p)
    s = e + f - a - b - c
    return Rewrite(
        p,
        GammaProduct.of([s, f], [f - c, e + f - b - a]),
        PFQParams((c, e - a, e - b), (e + f - a - b, e)),
    )


def thomae_a5_as_printed(p):
    """The Γ(s)Γ(f)/(Γ(f-c)Γ(e+f-a-b)) prefactor attached to the thomae_a4 target tuple."""
    a, b, c, e, f = _unpack_3f2(p)
    s = e + f - a - b - c
    return Rewrite(
        p,
        GammaProduct.of([s, f], [f - c, e + f - b - a]),
        PFQParams((a, f - c, f - b), (e + f - b - c, f)),
    )


def thomae_a51(p):
    a, b, c, e, f = _unpack_3f2(p)
    s = e + f - a - b - c
    return Rewrite(
        p,
        GammaProduct.of([s, f, e], [b, e + f - b - c, e + f - a - b]),
        PFQParams((s, f - b, e - b), (e + f - b - c, e + f - a - b)),
    )


THOMAE_RULES = {
    "A.4": thomae_a4,
    "A.5": thomae_a5,
    "A.5-printed": thomae_a5_as_printed,
    "A.51": thomae_a51,
}


def thomae_apply(rule, p):
    try:
        return THOMAE_RULES[rule](p)
    except KeyError:
        raise InvalidParams(f"unknown Thomae rule {rule!r}; known: {sorted(THOMAE_RULES)}")


def closed_a6(a, b, c):
    """3F2(a, b, c; a+1, b+1; 1)."""
    if a == b:
        raise DomainError("3F2(a, b, c; a+1, b+1; 1) closed form needs a != b")
    first = gamma_ratio([1 - c, b + 1], [b - c + 1], constant=a / (a - b))
    second = gamma_ratio([1 - c, a + 1], [a - c + 1], constant=b / (a - b))
    return first - second


def closed_a7(a, b, c, dpar):
    """3F2(a, b, c; a+1, dpar; 1) as a gamma term minus a residual 3F2."""
    if a == b:
        raise DomainError("3F2(a, b, c; a+1, d; 1) closed form needs a != b")
    head = gamma_ratio([1 - c, dpar, a + 1, b - a], [b, dpar - a, a - c + 1])
    scale = gamma_ratio([1 - c, dpar], [b - c + 1, dpar - b], constant=a / (b - a))
    if scale.value == 0.0:
        return head
    residual = pfq_at_1(PFQParams((b, b - dpar + 1, b - a), (b - a + 1, b - c + 1)))
    return head - scale * residual


def euler_a0(a, b, c, z):
    """(1-z)^(c-a-b) 2F1(c-a, c-b; c; z)."""
    if z >= 1:
        raise DomainError(f"Euler transformation needs z < 1, got {z!r}")
    return ((1.0 - z) ** (c - a - b)) * gauss_2f1(c - a, c - b, c, z)


def pfaff_a0(a, b, c, z):
    """(1-z)^(-a) 2F1(a, c-b; c; z/(z-1))."""
    if z >= 1:
        raise DomainError(f"Pfaff transformation needs z < 1, got {z!r}")
    zc = 1.0 - z
    return (zc ** -a) * gauss_2f1(a, c - b, c, -z / zc, zc=1.0 / zc)


def connection_a2(a, b, c, z):
    """2F1(a, b; c; z) as the two-term expansion in 1 - z."""
    if not 0 < z < 1:
        raise DomainError(f"connection formula is evaluated on 0 < z < 1, got {z!r}")
    m = c - a - b
    if abs(m - round(m)) < 1e-9:
        raise DomainError(f"connection formula degenerates for integer c - a - b = {m!r}")
    w = 1.0 - z
    first = gamma_ratio([c, m], [c - a, c - b]) * gauss_2f1(a, b, 1.0 - m, w, zc=z)
    second = gamma_ratio([c, -m], [a, b]) * (w ** m) * gauss_2f1(c - a, c - b, 1.0 + m, w, zc=z)
    return first + second


def _ordered_pair(pp, qq, dpar):
    if dpar == 1:
        raise DomainError("pair kernel is singular at d = 1")
    if not (0 <= pp <= 1 and 0 <= qq <= 1):
        raise DomainError(f"pair kernel needs p, q in [0, 1], got p={pp!r}, q={qq!r}")
    if abs(pp - qq) < KERNEL_MIN_SEPARATION:
        raise DomainError(f"pair kernel needs |p - q| >= {KERNEL_MIN_SEPARATION:g}, got p={pp!r}, q={qq!r}")
    return (pp, qq) if pp > qq else (qq, pp)


def kernel_a1(pp, qq, dpar):
    """
    ∫ (1 - p z)^(-d) (1 - q z)^(-d) dz over [0, 1], for p > q:

        (p/(p-q))^d / (p(1-d)) * [F(q/(q-p)) - (1-p)^(1-d) F(q(1-p)/(q-p))]

    with F = 2F1(d, 1-d; 2-d; .). The integrand is symmetric so p and q are
    swapped when needed.
    """
    p, q = _ordered_pair(pp, qq, dpar)
    d = dpar
    scale = (p / (p - q)) ** d / (p * (1.0 - d))
    near = gauss_2f1(d, 1.0 - d, 2.0 - d, q / (q - p))
    far = gauss_2f1(d, 1.0 - d, 2.0 - d, q * (1.0 - p) / (q - p))
    return scale * (near - ((1.0 - p) ** (1.0 - d)) * far)


def kernel_a1_as_printed(pp, qq, dpar):
    """The two-term pair-kernel expression with the (1-p)^(-d) factor of the reference table."""
    if not pp > qq:
        raise DomainError("printed pair kernel is real only for p > q")
    p, q = _ordered_pair(pp, qq, dpar)
    d = dpar
    first = (p / (p - q)) ** d / ((1.0 - d) * p) * gauss_2f1(1.0 - d, d, 2.0 - d, q / (q - p))
    second = ((1.0 - p) ** -d * (p * (1.0 - q) / (p - q)) ** d / ((1.0 - d) * p)
              * gauss_2f1(1.0 - d, d, 2.0 - d, q * (1.0 - p) / (q - p)))
    return first - second


def brychkov_a3(alpha, a, b, c, a2, b2, c2, tol=1e-12):
    """
    ∫ x^(α-1) (1-x)^(c-1) 2F1(a, b; c; 1-x) 2F1(a2, b2; c2; 1-x) dx over [0, 1]
    as two 4F3 at unit argument, with Γ(a2+b2-c2) in the second prefactor.
    """
    head = gamma_ratio(
        [c, c2, c2 - a2 - b2, alpha, c - a - b + alpha],
        [c - a + alpha, c - b + alpha, c2 - a2, c2 - b2],
    )
    tail_scale = gamma_ratio(
        [c, c2, a2 + b2 - c2, c2 - a2 - b2 + alpha, c + c2 - a - a2 - b - b2 + alpha],
        [a2, b2, c + c2 - a - a2 - b2 + alpha, c + c2 - a2 - b - b2 + alpha],
    )
    total = EvalResult(0.0)
    if head.value != 0.0:
        total = total + head * pfq_at_1(PFQParams(
            (a2, b2, alpha, c - a - b + alpha),
            (c - a + alpha, c - b + alpha, a2 + b2 - c2 + 1),
        ), tol=tol)
    if tail_scale.value != 0.0:
        total = total + tail_scale * pfq_at_1(PFQParams(
            (c2 - a2, c2 - b2, c2 - a2 - b2 + alpha, c + c2 - a - a2 - b - b2 + alpha),
            (c2 - a2 - b2 + 1, c + c2 - a - a2 - b2 + alpha, c + c2 - a2 - b - b2 + alpha),
        ), tol=tol)
    return total
