"""Exception types shared across the package."""


class GenusError(ValueError):
    """Operands carry different genera (or a genus the operation does not accept)."""


class WindowError(ValueError):
    """A monomial fell outside the window a cochain or system was built on."""


class ParseError(ValueError):
    """A serialized object could not be decoded."""
