"""Exception types shared across the package."""


class ValidationError(ValueError):
    """Input data does not satisfy an operation's preconditions."""


class ResourceError(RuntimeError):
    """A configured size cap would be exceeded."""


class TheoremViolation(AssertionError):
    """A computed value contradicts a structural theorem the code relies on."""
