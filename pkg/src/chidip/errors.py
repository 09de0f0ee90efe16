"""Exception taxonomy shared by all chidip modules."""


class ChidipError(Exception):
    """Base class for all errors raised by this package."""


class InvalidGeometry(ChidipError):
    """Dipole orientation or axis vector is unusable (e.g. zero length)."""


class InvalidSeparation(ChidipError):
    """Dimensionless separation x = k0*R is not a positive real."""


class DomainError(ChidipError):
    """Argument outside the mathematical domain of a special function."""


class UnphysicalRates(ChidipError):
    """Rate coefficients describe a growing mode (no state may grow)."""


class OracleDivergence(ChidipError):
    """Brute-force quadrature failed to converge under refinement."""


class UsageError(ChidipError):
    """Bad command-line or config-file input."""
