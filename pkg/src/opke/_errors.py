"""Exception types shared across the package."""


class HypothesisError(ValueError):
    """An input violates a structural hypothesis (real shift, k > n, duplicates)."""


class ConvergenceError(RuntimeError):
    """An iterative or adaptive routine stopped before meeting its target.

    Carries the best available estimate and the error achieved so far.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error
