"""Errors raised by the modeling, simulation and ingest layers."""


class NetloadError(Exception):
    """Base class for every domain error in this app."""


class EmptyInput(NetloadError):
    pass


class InconsistentDimension(NetloadError):
    pass


class DimensionMismatch(NetloadError):
    pass


class DuplicateConfiguration(NetloadError):
    pass


class InsufficientData(NetloadError):
    pass


class RankDeficient(NetloadError):
    pass


class InvalidConfig(NetloadError):
    pass


class ExhaustedSpace(NetloadError):
    pass


class LengthMismatch(NetloadError):
    pass


class ZeroActual(NetloadError):
    pass


class DegenerateActuals(NetloadError):
    pass


class MixedInputSize(NetloadError):
    pass


class UnknownInterface(NetloadError):
    pass


class WindowOutOfRange(NetloadError):
    pass


class TooFewSamples(NetloadError):
    pass


class ParseError(NetloadError):
    """Malformed input text, located by 1-based line and/or field name."""

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        location = []
        if line is not None:
            location.append(f"line {line}")
        if field is not None:
            location.append(f"field '{field}'")
        prefix = f"{', '.join(location)}: " if location else ""
        super().__init__(f"{prefix}{message}")


class VersionMismatch(ParseError):
    pass


class MissingHeader(ParseError):
    pass


class NegativeValue(ParseError):
    pass


class NonMonotonicTimestamps(ParseError):
    pass


class ArtifactIOError(NetloadError):
    """Reading or writing an artifact file failed."""

    def __init__(self, message, path=None):
        self.path = path
        super().__init__(message)
