"""Exception types shared across the library."""


class FieldMismatchError(ValueError):
    """Two values from incompatible fields were combined."""


class ExtensionOverflowError(ArithmeticError):
    """A computation would require a field extension beyond the allowed tower."""


class NeedsHintError(ValueError):
    """A characteristic-0 search needs a caller-supplied rational point."""


class DegenerateInputError(ValueError):
    """Geometric input is degenerate (coincident points, singular conic, ...)."""


class NotOnConicError(ValueError):
    """A point expected to lie on a conic does not."""
