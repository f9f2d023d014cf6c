"""Exception taxonomy shared by all dynamolab modules.

Configuration errors are raised before any numerics run (bad sizes, bad
literals, unmet preconditions that a caller could have checked); numerical
errors signal that a computation was attempted and failed or produced
something outside its contract.
"""


class DynamoLabError(Exception):
    """Base class for all dynamolab errors."""


class ConfigurationError(DynamoLabError):
    """Invalid run configuration (sizes, literals, parameter combinations)."""


class DomainError(DynamoLabError):
    """Input outside the mathematical domain of an operation (l = 0, alpha <= 0, ...)."""


class ShapeError(DynamoLabError):
    """Array arguments with incompatible shapes."""


class SolverError(DynamoLabError):
    """A numerical solver failed to converge or violated its residual contract."""


class ClassificationError(DynamoLabError):
    """Spectrum classification found an unpaired complex eigenvalue."""


class DegeneratePencilError(DynamoLabError):
    """Quadratic pencil with vanishing leading coefficient."""


class TrackingError(DynamoLabError):
    """Branch matching could not be resolved even after step refinement."""


class BracketError(DynamoLabError):
    """Bisection bracket does not straddle a real/complex transition."""


class SingularSuperpotentialError(DynamoLabError):
    """Darboux seed function has a node inside the domain."""


class DegenerateQError(DynamoLabError):
    """Profile log-derivative difference q vanishes where a formula needs 1/q."""
