class InputError(ValueError):
    """Malformed or out-of-domain input (zero vector, wrong dimension, bad space description)."""


class CapabilityError(NotImplementedError):
    """The requested computation is not supported for this kind of space."""
