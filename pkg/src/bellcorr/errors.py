"""Exception types shared across the package."""


class NonPhysicalState(ValueError):
    """A state has a negative eigenvalue (beyond tolerance) or broken trace/Hermiticity."""


class NotBellDiagonal(ValueError):
    """A density matrix does not have the Bell-diagonal X pattern."""


class NotConverged(RuntimeError):
    """An iterative search stopped without meeting its convergence criterion."""


class AppendixViolation(RuntimeError):
    """A product-state search found a value below the analytic minimum |c|^2/4."""
