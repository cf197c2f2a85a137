"""Shared exception types."""


class ConfigurationError(ValueError):
    """Parameters or flag combinations are inconsistent with the chosen version."""


class ParseError(ValueError):
    """Malformed input file; the message carries file and line context."""


class UnsupportedRecordError(ValueError):
    """A record the pipeline cannot represent (e.g. more than one missing value)."""
