"""Exception types shared across the package.

The CLI maps these onto distinct exit codes, so keep the hierarchy flat
and the distinctions meaningful: bad input domain vs. exhausted working
precision vs. a point that is simply not on the curve.
"""


class DomainError(ValueError):
    """An argument lies outside the documented domain of an operation."""


class PointNotOnCurve(DomainError):
    """A point handed to a curve operation does not satisfy the equation."""


class BadReduction(DomainError):
    """Reduction modulo p was requested at a prime dividing the discriminant."""


class PrecisionExhausted(ArithmeticError):
    """A numerical routine could not meet its tolerance at the working precision."""
