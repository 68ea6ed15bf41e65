"""Package-level exception types."""


class ConfigurationError(ValueError):
    """Raised when inputs are structurally invalid (bad domain spec, bc that
    does not cover the exterior ring, out-of-range parameters, ...)."""


class EnumerationCapError(ConfigurationError):
    """Raised when an exact-enumeration request exceeds the face-count cap."""
