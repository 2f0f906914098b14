"""Exception hierarchy shared by every module."""


class BooleBellError(Exception):
    """Base class for all library errors."""


class SizeError(BooleBellError, ValueError):
    """An event count or grid size lies outside the supported range."""


class ScenarioError(BooleBellError, ValueError):
    """Objects built over different or malformed event scenarios were combined."""


class MissingDataError(BooleBellError, ValueError):
    """A computation needs probabilities that the assignment does not carry."""

    def __init__(self, message, missing=()):
        super().__init__(message)
        self.missing = tuple(missing)


class DomainError(BooleBellError, ValueError):
    """A probability, angle or subset lies outside its admissible domain."""


class UnsupportedError(BooleBellError, ValueError):
    """The request is well formed but outside what the method handles."""
