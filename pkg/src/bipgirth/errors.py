"""Exception hierarchy shared by all modules."""


class BipgirthError(Exception):
    """Base class for every error raised by this package."""


class GraphConstructionError(BipgirthError):
    """Invalid vertex counts or an edge endpoint out of range."""


class GraphFormatError(BipgirthError):
    """Malformed text in the line-oriented graph format."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class SelectionError(BipgirthError):
    """An induced selection refers to out-of-range vertices."""


class ParameterError(BipgirthError):
    """A parameter violates its documented precondition."""


class EnumerationCapExceeded(BipgirthError):
    """Cycle enumeration hit its work cap; results would be incomplete."""


class SearchBudgetExceeded(BipgirthError):
    """Biclique search hit its work limit; 'not found' cannot be certified."""


class PreconditionError(BipgirthError):
    """A structural precondition (e.g. an r-regular side) does not hold."""


class PartitionStructureError(BipgirthError):
    """Blocks overlap or do not cover the B side."""


class PartitionUnavailableError(BipgirthError):
    """No valid (r,t)-partition was found within budget (a desk-scale
    limitation, not a disproof of existence)."""


class NeitherError(BipgirthError):
    """The independent-set-or-hub dichotomy failed; the caller's parameters
    are below the scale where it is guaranteed."""


class AuditError(BipgirthError):
    """A would-be result failed its own postcondition audit and was
    suppressed instead of being returned."""


class GenerationError(BipgirthError):
    """A seeded generator could not realize the requested parameters."""
