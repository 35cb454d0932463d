"""Exception types shared across the toolkit."""


class PlatoonError(Exception):
    """Base class for all toolkit errors."""


class Infeasible(PlatoonError):
    """Constraint set is empty (no point satisfies all constraints within tolerance).

    Carries the least-violating point found and its worst violation, when available.
    """

    def __init__(self, message="infeasible", x=None, violation=None):
        super().__init__(message)
        self.x = x
        self.violation = violation


class NotConverged(PlatoonError):
    """Iteration cap reached; carries the best iterate and its residual."""

    def __init__(self, message="iteration cap reached", x=None, residual=None):
        super().__init__(message)
        self.x = x
        self.residual = residual


class NoSolution(PlatoonError):
    """Riccati iteration diverged or failed to converge."""


class Unstable(PlatoonError):
    """Closed-loop matrix has spectral radius >= 1."""


class Degenerate(PlatoonError):
    """Input data carries no usable variation (e.g. fewer than 2 distinct points)."""


class OutOfRange(PlatoonError):
    """Evaluation point lies outside the valid domain."""


class MisalignedSeries(PlatoonError):
    """Time series passed together do not share a common grid."""


class TooShort(PlatoonError):
    """Record shorter than one trajectory segment."""


class EmptyCluster(PlatoonError):
    """A driving-condition cluster contains no segments."""


class EmptyTightening(PlatoonError):
    """Tightened bounds leave no feasible nominal set at some step."""
