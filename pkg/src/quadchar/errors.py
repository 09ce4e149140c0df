"""Exception types shared across the package."""


class QuadcharError(Exception):
    """Base class for all package-specific errors."""


class AccuracyError(QuadcharError):
    """A requested accuracy target cannot be met with the given parameters."""


class BudgetExceededError(QuadcharError):
    """A computation was refused because it exceeds the configured budget."""


class DatasetError(QuadcharError):
    """A dataset file is missing, malformed, or inconsistent with the request."""
