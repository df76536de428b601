"""Exception hierarchy shared by every module."""


class RadonUrnError(Exception):
    """Base class for library errors."""


class DomainError(RadonUrnError, ValueError):
    """A parameter lies outside its admissible range."""


class DimensionMismatch(RadonUrnError, ValueError):
    pass


class DegenerateInput(RadonUrnError, ValueError):
    pass


class UnsupportedDimension(RadonUrnError, ValueError):
    pass


class SizeGuard(RadonUrnError, ValueError):
    """An exact construction would exceed its desk-scale size cap."""


class OracleContractViolation(RadonUrnError):
    """A user oracle returned an answer inconsistent with its contract."""


class IterationBudgetExceeded(RadonUrnError):
    """An adaptive loop hit its hard iteration cap.

    ``partial`` carries whatever result had been accumulated so far.
    """

    def __init__(self, message, partial=None):
        super().__init__(message)
        self.partial = partial


class BoundViolation(RadonUrnError, AssertionError):
    """A proven iteration bound was exceeded at runtime."""
