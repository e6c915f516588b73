"""Exception types shared across the package."""


class ParameterError(ValueError):
    """A precondition on user-supplied parameters was violated."""


class SingularSymbolError(ParameterError):
    """A homogeneous symbol with negative exponent met a nonzero zero-mode."""


class AdmissibilityError(ParameterError):
    """A (q, p, r) triple fails the dispersive-estimate admissibility conditions."""


class RegionError(ParameterError):
    """A dyadic interaction region is empty or contradictory."""


class InstabilityError(RuntimeError):
    """Time stepping produced NaN/overflow; carries the offending step index."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step
