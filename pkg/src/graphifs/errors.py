"""Exception hierarchy shared across the package."""


class GraphIFSError(Exception):
    """Base class for all package errors."""


class GraphStructureError(GraphIFSError):
    """An edge references an undeclared vertex, or ids collide."""


class SpecValidationError(GraphIFSError):
    """A system document parsed but failed structural validation."""

    def __init__(self, message, issues=()):
        super().__init__(message)
        self.issues = tuple(issues)


class ResourceCapError(GraphIFSError):
    """An enumeration would exceed its configured resource cap."""

    def __init__(self, message, bound=None):
        super().__init__(message)
        self.bound = bound


class UnsupportedFeatureError(GraphIFSError):
    """The operation does not support this input (e.g. reflecting maps)."""


class NumericError(GraphIFSError):
    """A numeric routine failed to converge or lost its bracket."""


class RewriteError(GraphIFSError):
    """The standard-IFS rewrite does not terminate for this input."""
