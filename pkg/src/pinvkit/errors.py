"""Exception hierarchy shared by the core, the service layer and the CLI."""


class PinvkitError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PinvkitError):
    """Malformed or out-of-range user input (bad file, bad flag value)."""


class ParseError(InputError):
    """Text that does not conform to the exact matrix/rational grammar."""


class DimensionMismatchError(InputError):
    """Operands with incompatible shapes."""


class PreconditionError(PinvkitError):
    """A documented operation precondition does not hold."""


class ZeroMatrixError(PreconditionError):
    """Operation undefined for the zero matrix."""


class InvalidCertificateError(PreconditionError):
    """Spectral certificate fields outside their admissible ranges."""


class WitnessError(PreconditionError):
    """A nonzero witness was required but missing or refuted."""


class SingularMatrixError(PreconditionError):
    """Exact inversion attempted on a singular square matrix."""
