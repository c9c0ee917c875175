"""Exception types raised by the public operations."""

from __future__ import annotations


class PfqintError(Exception):
    """Base class for all errors raised by this package."""


class PoleAtNonpositiveInteger(PfqintError):
    """The gamma function has a pole at the requested point."""


class LowerParameterPole(PfqintError):
    """A lower series parameter is a nonpositive integer, so a term
    denominator would vanish."""


class LiftedLowerPole(LowerParameterPole):
    """A lower parameter appended by the lifting construction is a
    nonpositive integer."""


class DivergentSeries(PfqintError):
    """The requested series has zero radius of convergence (or the argument
    lies outside the convergence disc)."""


class NotConverged(PfqintError):
    """Truncation budget exhausted before the stopping rule fired.

    The best available partial result is attached as ``result``.
    """

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class ArgumentTooSmall(PfqintError):
    """Argument magnitude is below the validity floor of an asymptotic form."""


class ArgumentTooLarge(PfqintError):
    """Argument magnitude exceeds the validity cap of a series form."""


class NoDecreasingRegime(PfqintError):
    """The divergent asymptotic series has no initially decreasing terms,
    so optimal truncation cannot extract any digits."""


class ProductPole(PfqintError):
    """A factor of the outer denominator product vanishes for a needed index."""


class PochhammerPole(PfqintError):
    """A Pochhammer denominator in an identity evaluates to zero."""


class ParityDomainViolation(PfqintError):
    """Moment exponent violates its even/odd domain constraint."""


class MaxSubdivisions(PfqintError):
    """Adaptive quadrature exceeded its panel budget."""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result


class SingularInterior(PfqintError):
    """The integrand is non-finite away from the interval endpoints."""


class DecayTooSlow(PfqintError):
    """Tail of a semi-infinite integrand does not decay fast enough for the
    requested tolerance."""


class NoiseFloor(PfqintError):
    """Finite-difference extrapolants diverged before reaching the requested
    tolerance."""

    def __init__(self, message: str, result=None):
        super().__init__(message)
        self.result = result
