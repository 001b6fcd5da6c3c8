"""Exception types shared across the package."""


class FuzzyQoEError(Exception):
    """Base class for all package-specific errors."""


class OutOfRangeError(FuzzyQoEError, ValueError):
    """A crisp value or argument lies outside its allowed range."""


class SchemaError(FuzzyQoEError, ValueError):
    """Survey data violates the expected CSV schema or value bounds."""


class NoRuleCoverageError(FuzzyQoEError):
    """No rule fires for the given inputs: the knowledge base has no coverage there."""
