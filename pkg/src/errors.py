class AGroupError(Exception):
    """Base class for every error raised on purpose by this package."""


class InvalidGroupError(AGroupError, ValueError):
    pass


class PreconditionError(AGroupError, ValueError):
    pass


class NotAHomomorphismError(PreconditionError):
    pass


class NotInImageError(AGroupError, LookupError):
    pass


class ResourceExhausted(AGroupError, RuntimeError):
    """A configured cap or node budget was exceeded; no answer was produced."""


class ParseError(AGroupError, ValueError):
    pass


class InternalConsistencyError(AGroupError, AssertionError):
    pass
