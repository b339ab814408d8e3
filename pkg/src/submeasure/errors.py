"""Exception types shared across the package."""


class SubmeasureError(Exception):
    """Base class for all package errors."""


class SpaceMismatchError(SubmeasureError):
    """Operands live on different finite spaces."""


class SchemaError(SubmeasureError):
    """A JSON document failed validation.

    Carries the path of the offending element (e.g. "$.edges[3][2]").
    """

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class ModelError(SubmeasureError):
    """A correspondence or family violates a structural invariant."""


class ModelIncompleteError(ModelError):
    """An operation needs limit-fiber data the model does not declare."""


class PreconditionError(SubmeasureError):
    """An operation's documented precondition does not hold."""


class NonConvergenceError(SubmeasureError):
    """An iteration failed to settle within its iteration budget."""
