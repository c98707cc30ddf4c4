class GraphError(ValueError):
    """Malformed graph input or an out-of-range vertex."""


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class ModelFidelityError(RuntimeError):
    """The finite model violated a property the continuum theory guarantees.

    ``witness`` carries the offending tuple so the failure can be replayed.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness
