"""Exception hierarchy for the engine."""


class HilbNefError(Exception):
    """Base class for all engine errors."""


class DimensionMismatch(HilbNefError, ValueError):
    pass


class LatticeError(HilbNefError, ValueError):
    """Malformed lattice or surface data (asymmetric Gram matrix, wrong signature, ...)."""


class UndefinedDiscriminant(HilbNefError, ValueError):
    pass


class UnsupportedComparison(HilbNefError, ValueError):
    pass


class IncomparableWalls(HilbNefError, ValueError):
    pass


class NoAccumulation(HilbNefError, ValueError):
    pass


class PreconditionError(HilbNefError, ValueError):
    """A theorem hypothesis needed by the requested computation does not hold."""


class DegenerateWall(HilbNefError, ValueError):
    pass


class CertificateRefused(HilbNefError, ValueError):
    """Raised when a report is requested for an uncertified or out-of-range result."""


class ConfigError(HilbNefError, ValueError):
    def __init__(self, message, *, field=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.field = field
        self.line = line
