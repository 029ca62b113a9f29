"""Exception types shared across the package."""


class RingJsaError(Exception):
    """Base class for all package-specific errors."""


class DegeneratePumpError(RingJsaError):
    """Pump amplitude is identically zero (e.g. eta=0.5 with delta_tau=0)."""


class DegenerateStateError(RingJsaError):
    """All-zero joint amplitude/intensity; purity is undefined."""


class ResolutionError(RingJsaError):
    """Requested measurement resolution is incompatible with the grid."""


class GridFormatError(RingJsaError):
    """Malformed grid or table file; message carries row/column location."""


class ConfigError(RingJsaError):
    """Invalid run configuration; message carries the key and line number."""
