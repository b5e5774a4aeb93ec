"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Raised when an edge-list input cannot be parsed."""


class ConfigError(ValueError):
    """Raised for invalid variant configurations or argument values."""


class SizeGuardError(ValueError):
    """Raised when the brute-force oracle is asked for an instance beyond its guard."""


class CountOverflowError(OverflowError):
    """Raised when a walk count exceeds the fast path's fixed-width integers."""


class InvariantError(RuntimeError):
    """Raised when an internal consistency check fails (signals a bug, not bad input)."""
