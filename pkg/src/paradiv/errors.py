"""Exception hierarchy shared across the toolkit.

CLI exit codes map onto these: usage errors exit 1, DataError exits 2,
ExternalServiceError exits 3.
"""


class ParadivError(Exception):
    """Base class for all toolkit errors."""


class DataError(ParadivError):
    """Malformed or inconsistent input data (bad rows, bad trees, misses)."""


class ExternalServiceError(ParadivError):
    """A remote endpoint (embedding server, judge endpoint) failed."""
