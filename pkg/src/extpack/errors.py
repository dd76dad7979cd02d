"""Exception types shared across the package."""


class InfeasibleSpecError(ValueError):
    """Raised when (k, g) violates the divisibility condition k | 6(g-2)."""


class ComplexFormatError(ValueError):
    """Raised on malformed complex files; carries the offending line number."""

    def __init__(self, message, line=None):
        if line is not None:
            message = "line %d: %s" % (line, message)
        super().__init__(message)
        self.line = line


class InvalidComplexError(ValueError):
    """Raised when polygon data does not describe a closed connected surface."""


class NotExtremalError(ValueError):
    """Raised when an operation requires a certified extremal complex."""


class IneligibleSiteError(ValueError):
    """Raised when a grafting site does not match its variant's precondition."""


class RewriteSearchError(RuntimeError):
    """No valid rewrite exists in the bounded search space.

    This signals a bug in the eligibility predicate rather than bad input.
    """


class CoverError(ValueError):
    """Raised when a covering construction violates its preconditions."""


class EnumerationCapError(RuntimeError):
    """A coset enumeration or search exceeded its resource cap."""


class InconclusiveError(RuntimeError):
    """A bounded numeric test exhausted its budget without deciding."""
