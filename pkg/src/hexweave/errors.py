"""Fault types shared across the engine."""


class HexweaveError(Exception):
    """Base class for engine faults."""


class SeedFormatError(HexweaveError):
    """Malformed seed or patch input."""


class InsufficientDepthError(HexweaveError):
    """An operation needed coset data beyond the seed's declared depth (strict tail)."""

    def __init__(self, level: int, message: str | None = None):
        self.level = level
        super().__init__(message or f"insufficient depth: level {level} data required")


class DegenerateSeedError(HexweaveError):
    """The seed behaves singularly inside the window (ambiguous edge or apex)."""
