"""Exception hierarchy shared by every subpackage.

Everything raised on purpose derives from :class:`DevMeansError`, so callers
(and the command line front end) can separate computational failures from
programming errors.
"""


class DevMeansError(Exception):
    """Base class for all library errors."""


class DomainViolation(DevMeansError, ValueError):
    """A value lies outside the interval a function is defined on."""


class GridOutsideDomain(DomainViolation):
    pass


class EmptySample(DevMeansError, ValueError):
    pass


class EmptyInput(DevMeansError, ValueError):
    pass


class SampleTooSmall(DevMeansError, ValueError):
    pass


class NonpositiveInput(DevMeansError, ValueError):
    pass


class NonpositiveWeight(DevMeansError, ValueError):
    pass


class BadK(DevMeansError, ValueError):
    pass


class ZeroLeadingCoefficient(DevMeansError, ValueError):
    pass


class NoConvergence(DevMeansError, RuntimeError):
    """Root or minimum search ran out of budget, or lost its bracket."""


class SamplerOnlyUnsupported(DevMeansError, TypeError):
    """Quadrature was requested for a law that only knows how to sample."""


class QuadratureBudgetExceeded(DevMeansError, RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance.

    Attributes:
        estimate: best value found.
        error: the integrator's own error bound for ``estimate``.
    """

    def __init__(self, message, estimate=float("nan"), error=float("inf")):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class Divergent(DevMeansError, ArithmeticError):
    """An expectation is (numerically) infinite."""


class NoRootInDomain(DevMeansError):
    """The expected deviation keeps one sign over the whole searchable region."""


class InverseDomain(DevMeansError, ArithmeticError):
    """A value handed to a generator inverse lies outside the generator's image."""


class GridTooCoarse(DevMeansError):
    pass


class BoundaryStep(DomainViolation):
    """A finite-difference stencil does not fit inside the domain."""


class DegenerateDistribution(DevMeansError):
    pass


class NonpositiveSlope(DevMeansError):
    """E[-d/dt D(xi, t0)] is not positive."""


class ZeroDerivative(DevMeansError, ArithmeticError):
    pass


class NotBeyondMean(DevMeansError, ValueError):
    pass


class FlatObjective(DevMeansError):
    """The log moment generating function keeps decreasing; its infimum sits at c -> infinity."""


class OutOfRange(DevMeansError, ValueError):
    pass


class ExactModeUnavailable(DevMeansError, UserWarning):
    """Exact large-deviation probabilities are too expensive; an empirical estimate is used instead."""
