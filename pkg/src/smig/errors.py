"""Exception taxonomy shared by every module in the package."""


class SmigError(Exception):
    """Base class for all toolkit errors."""


class DomainError(SmigError):
    """Argument outside the supported range."""


class SingularityError(SmigError):
    """Evaluation requested at a singular point."""


class ConfigError(SmigError):
    """Invalid or inconsistent configuration value."""


class GeometryError(SmigError):
    """Geometric precondition violated (e.g. antenna inside a scatterer)."""


class TruncationError(SmigError):
    """Series failed to reach the requested tolerance within the order cap."""


class KindError(SmigError):
    """Scattering-matrix kind does not match the operation."""


class DataError(SmigError):
    """Malformed, incomplete, or non-finite numeric data."""


class ShapeError(SmigError):
    """Mismatched matrix dimensions or frequencies."""


class RankError(SmigError):
    """Degenerate singular spectrum where a rank decision is impossible."""
