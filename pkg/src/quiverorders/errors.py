"""Exception hierarchy shared by every module of the package."""


class QuiverError(Exception):
    """Base class for all errors raised by quiverorders."""


class ValidationError(QuiverError, ValueError):
    """Malformed input: bad counts, shapes, documents or arrow references."""


class DimensionError(ValidationError):
    """Vectors or matrices whose lengths do not match."""


class IllegalMoveError(ValidationError):
    """A reduction move whose legality condition fails."""


class CharacterDataError(ValidationError):
    """Character tables that are inconsistent or give non-integral multiplicities."""


class PairingError(ValidationError):
    """Arrows of a double quiver that cannot be matched with a dual."""


class SchemeError(ValidationError):
    """A semi-invariant scheme whose layout does not fit its setting."""


class NotInChartError(QuiverError):
    """The determinant of L vanishes, so the representation lies outside X_D."""


class UnsupportedError(QuiverError):
    """Input outside the documented scope of an algorithm."""


class ResourceError(QuiverError):
    """A configured size bound was exceeded."""
