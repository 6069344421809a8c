"""Exception hierarchy shared by the library and the CLI."""


class ConeCoderivError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ConeCoderivError, ValueError):
    """Malformed input (non-finite coordinates, bad literals, ...)."""


class DimensionMismatch(InputError):
    pass


class DegenerateInput(InputError):
    pass


class PreconditionViolated(ConeCoderivError):
    pass


class EmptySet(PreconditionViolated):
    pass


class CapExceeded(PreconditionViolated):
    """A combinatorial enumeration would exceed its hard cap."""


class TooManyBoxes(CapExceeded):
    pass


class TooManyBullets(CapExceeded):
    pass
