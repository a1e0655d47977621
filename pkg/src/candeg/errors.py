"""Exception hierarchy shared by all modules."""


class CandegError(Exception):
    """Base class for every error raised by the package."""


class DimensionMismatch(CandegError, ValueError):
    pass


class UnresolvableCohomology(CandegError):
    """Cohomology of a class cannot be computed or looked up."""


class UnsupportedSurface(CandegError):
    pass


class NonDivisible(CandegError):
    """A reduced fundamental relation has no integral solution."""


class NonIntegralK2(CandegError):
    pass


class InvalidBuildingData(CandegError, ValueError):
    pass


class CatalogError(CandegError):
    """Schema or semantic error in a catalog document.

    ``location`` is a slash-separated path into the offending document.
    """

    def __init__(self, message, location=""):
        self.message = message
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)
