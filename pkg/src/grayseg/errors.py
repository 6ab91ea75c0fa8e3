"""Exception hierarchy shared by all grayseg modules.

Two intermediate bases exist so the CLI can map failures to exit codes:
``InputFormatError`` covers unreadable or malformed image files,
``DegenerateInputError`` covers inputs that are structurally valid but
cannot support the requested clustering.
"""


class GraysegError(Exception):
    """Base class for all grayseg errors."""


class InputFormatError(GraysegError):
    """A file could not be read or is not a supported image format."""


class UnsupportedFormat(InputFormatError):
    """Wrong magic number, bit depth, or a color image."""


class CorruptFile(InputFormatError):
    """Header parsed but the raster data is truncated or inconsistent."""


class IoFailure(InputFormatError):
    """Underlying OS-level read or write failure."""


class DegenerateInputError(GraysegError):
    """Input cannot support the requested operation."""


class EmptyImage(DegenerateInputError):
    """Image has zero pixels."""


class EmptyHistogram(DegenerateInputError):
    """Histogram has zero total count."""


class DegenerateImage(DegenerateInputError):
    """Image has a single gray level; no sweep is possible."""


class TooManyClasses(DegenerateInputError):
    """Requested more clusters than distinct gray levels present."""


class EmptyCenters(GraysegError):
    """A center sequence was empty where at least one is required."""


class InvalidDimensions(GraysegError):
    """Membership matrix dimensions must be positive."""


class InvalidK(GraysegError):
    """Cluster count is out of range for the operation."""


class DegenerateClass(GraysegError):
    """A class column carries zero total weighted mass."""


class DimensionMismatch(GraysegError):
    """Array shapes are inconsistent with each other."""


class LengthMismatch(GraysegError):
    """Two chromosomes must share the same length."""


class TooFewClusters(GraysegError):
    """Fewer than two centers; pairwise separation is undefined."""
