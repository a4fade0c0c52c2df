class PAlgError(Exception):
    """Base class for errors raised by this package."""


class CapExceeded(PAlgError):
    """A size cap was hit; raised before any large allocation."""


class NotBoolean(PAlgError, ValueError):
    pass


class NotALattice(PAlgError, ValueError):
    pass


class NotAnEncoding(PAlgError, ValueError):
    pass


class ParseError(PAlgError, ValueError):
    pass


class OutOfFragment(PAlgError, ValueError):
    pass


class EvaluationError(PAlgError, LookupError):
    pass
