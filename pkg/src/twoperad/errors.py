class ShapeError(ValueError):
    """Incompatible sizes, out-of-range indices, mismatched sources/targets."""


class ColoringError(ValueError):
    """Colorings of composed operad elements do not match."""


class GuardExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its size guard."""


class InvariantError(AssertionError):
    """A structural invariant (d^2 = 0, functoriality, ...) failed."""


class BoundExceeded(RuntimeError):
    """A truncated computation needs data beyond its computed bound."""
