"""Exception hierarchy shared by all modules."""


class ExtralabError(Exception):
    """Base class for every error raised by the package."""


class InputError(ExtralabError, ValueError):
    """Malformed or inconsistent input (unsorted grids, zero vectors, ...)."""


class OutOfDomainError(ExtralabError, ValueError):
    """A requested evaluation point lies outside the sampled grid."""


class ScheduleError(ExtralabError, ValueError):
    """A radius schedule is too short or does not fit the grid."""


class PositivityError(ExtralabError, ValueError):
    """A matrix that must be positive definite is not."""


class ResolutionError(ExtralabError, ValueError):
    """The requested quantity is below the resolution of the discretization."""

    def __init__(self, message, limit=None):
        super().__init__(message)
        self.limit = limit


class RankError(ExtralabError, ValueError):
    """Linearly dependent vectors where independence is required."""


class DivergenceError(ExtralabError, ValueError):
    """An integral that diverges for the supplied parameters."""


class FeasibilityError(ExtralabError, ValueError):
    """Boundary data cannot be represented at the configured degree."""


class ConditioningError(ExtralabError, ValueError):
    """A solve lost positivity even after regularization."""


class UnsupportedError(ExtralabError, NotImplementedError):
    """The requested method is not available for this configuration."""


class ConfigError(InputError):
    """A scenario file that does not parse or does not match the schema."""

    def __init__(self, message, line=None, column=None, source=None):
        where = ""
        if line is not None:
            where = f"{source or '<config>'}:{line}:{column}: "
        super().__init__(where + message)
        self.line = line
        self.column = column
