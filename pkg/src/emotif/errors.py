"""Exception hierarchy shared across the package."""


class EmotifError(Exception):
    """Base class for all errors raised by this package."""
