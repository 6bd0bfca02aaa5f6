"""Exception types shared across the package."""


class PointMatchError(Exception):
    """Base class for pointmatch-specific errors."""


class DegenerateInputError(PointMatchError):
    """An input has too few points for the requested operation."""


class NoCorrespondencesError(PointMatchError):
    """A global transform was requested from an empty set of pairs."""


class UndefinedMetricError(PointMatchError):
    """A correctness ratio was requested for a scene with no true pairs."""


class PointFileParseError(PointMatchError):
    """Malformed line in a point-set text file."""

    def __init__(self, path, line: int, message: str):
        super().__init__(f"{path}:{line}: {message}")
        self.path = str(path)
        self.line = line
