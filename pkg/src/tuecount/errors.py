"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input violates a documented invariant; message names the invariant."""


class ThresholdError(ValueError):
    """Argument outside the regime where an evaluation strategy is trusted."""


class NonConvergenceError(RuntimeError):
    """An iterative scheme exhausted its budget without converging."""
