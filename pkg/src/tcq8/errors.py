class InvalidParameter(ValueError):
    """A parameter is outside the documented domain."""


class InvalidInput(ValueError):
    """Input data violates an operation's precondition."""


class ConstructionRejected(ValueError):
    """A chain complex failed its d^2 = 0 (or shape) validation gate."""

    def __init__(self, message: str, cell=None):
        super().__init__(message)
        self.cell = cell
