class ConeDualityError(ValueError):
    """Base class for semantic errors (CLI exit code 3)."""


class DimensionMismatchError(ConeDualityError):
    pass


class EmptySetError(ConeDualityError):
    pass


class HypothesisError(ConeDualityError):
    """An input violates the hypothesis of the operation, e.g. a set that should contain 0."""


class NotGeneratedError(ConeDualityError):
    """The point is not in the span of the cone family."""


class DimensionCeilingError(ConeDualityError):
    """Input larger than the double description method handles in practice."""
