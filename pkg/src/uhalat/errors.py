class UhaError(Exception):
    """Base class for errors raised by this package."""


class CapacityError(UhaError):
    pass


class AlgebraMismatchError(UhaError):
    pass


class PartitionError(UhaError, ValueError):
    pass


class ShapeError(UhaError, ValueError):
    pass


class DomainError(UhaError, ValueError):
    """An argument lies outside the domain of a partial map."""


class PreconditionError(UhaError, ValueError):
    pass
