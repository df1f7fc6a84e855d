"""Exception hierarchy shared by all modules."""


class GCSBosonError(Exception):
    """Base class for every error raised by :mod:`gcsboson`."""


class DimensionError(GCSBosonError, ValueError):
    """Shapes or dimensions are invalid or do not match."""


class ParticleNumberError(GCSBosonError, ValueError):
    """Occupation vectors do not carry the expected number of particles."""


class PreconditionError(GCSBosonError, ValueError):
    """An input violates a documented precondition (unitarity, ranges, ...)."""


class SizeGuardError(GCSBosonError, ValueError):
    """The requested problem exceeds a hard size guard."""


class NumericalError(GCSBosonError, ArithmeticError):
    """A numerical result failed a consistency check."""


class ConfigError(GCSBosonError, ValueError):
    """An experiment configuration is malformed."""
