"""Exception types shared across the codec."""


class CodecError(Exception):
    """Base class for every error raised by this package."""


class IngestionError(CodecError):
    """Raw sequence file is malformed (short file, out-of-range sample)."""


class ConfigurationError(CodecError, ValueError):
    """An encoder/partition parameter is outside its permitted range."""


class StructuralError(CodecError, ValueError):
    """A block or plane does not have the shape an operation requires."""


class EncodeError(CodecError):
    """The encoder cannot represent a value in the bitstream."""


class DecodeError(CodecError):
    """The bitstream is truncated, corrupt, or internally inconsistent."""
