"""Exception types shared across the package."""


class DiamondRelayError(ValueError):
    """Base class for invalid inputs to any operation in this package."""


class DomainError(DiamondRelayError):
    """An input value lies outside the documented domain of an operation."""


class DegenerateDenominatorError(DiamondRelayError):
    """A closed-form expression genuinely divides by zero for these capacities."""


class HypothesisError(DiamondRelayError):
    """The instance violates a result's hypothesis, e.g. a zero-capacity link."""


class ConditionError(DiamondRelayError):
    """The requested result needs an equal-branch condition that does not hold."""


class FeasibilityError(DiamondRelayError):
    """A time-sharing vector leaves the scheduling simplex."""


class NegativeGapError(RuntimeError):
    """A sweep produced a record with bound < achievable rate beyond tolerance.

    This can only come from a solver defect, never from the sampled data, so
    it is a RuntimeError rather than a value error.
    """
