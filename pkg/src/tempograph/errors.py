"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """A caller-supplied value is outside the domain of the operation."""


class NetlistError(InvalidInputError):
    """A netlist is structurally unusable (bad reference, duplicate driver, ...)."""


class CycleError(NetlistError):
    """A netlist contains a combinational loop.

    The offending gate ids are kept on ``path`` so callers can report
    which gates participate in the loop.
    """

    def __init__(self, path):
        self.path = tuple(path)
        super().__init__("combinational cycle: " + " -> ".join(self.path))


class FileFormatError(InvalidInputError):
    """An input file does not match the expected on-disk format."""
