class HyperVerifyError(Exception):
    """Base class for every error raised by hyperverify."""


class DivergentError(HyperVerifyError):
    """A quantity is infinite: numerator gamma pole or a vanishing rational denominator."""


class PoleError(DivergentError):
    """A gamma argument sits on a non-positive integer."""


class DomainError(HyperVerifyError):
    """Inputs lie outside the validity domain of a formula or rule."""


class NoConvergence(HyperVerifyError):
    """A series or quadrature hit its work cap before reaching the tolerance."""


class InvalidParams(HyperVerifyError):
    """Malformed hypergeometric parameter lists."""


class UnknownIdentity(HyperVerifyError):
    """The requested identity id is not in the registry."""
