"""Exception hierarchy for simfiber."""

from typing import Any


class SimFiberError(Exception):
    """Base exception for all library errors.

    Provides helpful __str__ that includes exception name and message.
    """

    def __init__(self, message: str, **context: Any) -> None:
        self.message = message
        self.context = context
        super().__init__(message)

    def __str__(self) -> str:
        return f"{self.__class__.__name__}: {self.message}"


class ConfigurationError(SimFiberError):
    """Raised for invalid configuration.

    Includes field_name and reason for clear error messages.
    """

    def __init__(self, field_name: str, reason: str) -> None:
        self.field_name = field_name
        self.reason = reason
        message = f"{field_name} - {reason}"
        super().__init__(message, field_name=field_name, reason=reason)


class DimensionError(SimFiberError):
    """Raised when matrices in a chain do not compose."""

    pass


class AmplitudeRangeError(SimFiberError):
    """Raised when a sub-area cannot synthesize the requested amplitude."""

    def __init__(self, amplitude: float, limit: float) -> None:
        self.amplitude = amplitude
        self.limit = limit
        super().__init__(
            f"|x| = {amplitude:.6g} exceeds the synthesizable maximum {limit:.6g}",
            amplitude=amplitude,
            limit=limit,
        )


class DegenerateGeometryError(SimFiberError):
    """Raised when two coupled meta-atoms coincide."""

    pass


class RankDeficiencyError(SimFiberError):
    """Raised when a channel cannot carry the requested number of streams."""

    pass


class SingularChannelError(SimFiberError):
    """Raised when a channel matrix cannot be inverted."""

    pass


class SingularMatrixError(SimFiberError):
    """Raised when a noise-plus-interference covariance is not invertible."""

    pass


class ZeroGainError(SimFiberError):
    """Raised when a channel gain that must be positive is zero.

    Covers a metric normalizing by alpha = 0 and a path gain that underflows.
    """

    pass


class ResultsIOError(SimFiberError):
    """Raised when result records cannot be written or read."""

    def __init__(self, path: str, reason: str) -> None:
        self.path = path
        self.reason = reason
        super().__init__(f"{path} - {reason}", path=path, reason=reason)


class LayerIndexError(SimFiberError):
    """Raised when a layer index is outside the architecture's range."""

    def __init__(self, index: int, first: int, last: int) -> None:
        self.index = index
        super().__init__(
            f"layer index {index} outside {first}..{last}",
            index=index,
            first=first,
            last=last,
        )
