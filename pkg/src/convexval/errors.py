"""Exception hierarchy shared by every module."""


class ConvexValError(Exception):
    """Base class for library errors."""


class InputError(ConvexValError, ValueError):
    """Malformed input: dimension mismatch, zero direction, bad scalar."""


class DomainError(ConvexValError, ValueError):
    """Operation undefined on the given value (e.g. support of an empty set)."""


class ParameterError(ConvexValError, ValueError):
    """Family or law parameters violate a stated constraint.

    ``witness`` optionally carries a concrete counterexample found while
    checking the constraint.
    """

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class UnsupportedError(ConvexValError, NotImplementedError):
    """Operation deliberately not implemented for this function class."""


class ClassError(InputError):
    """Function of the wrong class (S vs F, compact vs positive)."""
