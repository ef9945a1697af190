"""Exception hierarchy shared by the library and the CLI."""


class AvalancheError(Exception):
    """Base class; the CLI maps it to exit status 1."""


class GraphError(AvalancheError, ValueError):
    pass


class SingularMatrixError(AvalancheError, ValueError):
    pass


class NotStableError(AvalancheError, ValueError):
    pass


class NotRecurrentError(AvalancheError, ValueError):
    pass


class LimitExceeded(AvalancheError):
    def __init__(self, states: int, limit: int):
        super().__init__(
            f"state space has {states} stable sandpiles, above the limit of {limit} "
            "(raise it with --limit or AVALANCHE_LIMIT)"
        )
        self.states = states
        self.limit = limit


class PolynomialError(AvalancheError, ValueError):
    pass


class ParkingError(AvalancheError, ValueError):
    pass


class TreePolynomialError(AvalancheError, ValueError):
    """Raised when a polynomial is not the avalanche polynomial of any rooted tree.

    ``component`` holds the offending sub-polynomial when one can be singled out.
    """

    def __init__(self, message, component=None):
        super().__init__(message)
        self.component = component
