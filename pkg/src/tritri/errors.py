"""Exception types shared across the library."""


class TriTriError(Exception):
    """Base class for all library errors."""


class InvalidCoordinate(TriTriError):
    """A float coordinate is NaN or infinite."""


class DegenerateConstruction(TriTriError):
    """An implicit point's defining elements do not intersect properly
    (segment parallel to plane, parallel or skew segments)."""


class DegenerateTriangle(TriTriError):
    """Input triangle has a repeated vertex or collinear vertices."""

    def __init__(self, reason):
        super().__init__(reason)
        self.reason = reason


class OutOfRange(TriTriError):
    """Simplex id outside the decodable range."""


class MalformedDescriptor(TriTriError):
    """An intersection descriptor violates its kind-specific id constraints."""


class InternalInvariantViolation(TriTriError):
    """A 'cannot happen' condition happened; indicates a bug."""


class ParseError(TriTriError):
    """Mesh file could not be parsed."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class UnsupportedFormat(TriTriError):
    """Mesh file format not recognized or not supported."""
