"""Exception hierarchy shared by all focalkit modules."""


class FocalKitError(Exception):
    pass


class InputError(FocalKitError):
    """Malformed or inconsistent user input."""


class ShapeError(InputError):
    pass


class NonGenericError(FocalKitError):
    """A random sample landed on a special locus; the caller should resample."""


class FocalFiberError(FocalKitError):
    """Every point of the fiber is focal."""


class InapplicableError(FocalKitError):
    """The hypothesis of a theorem check does not hold for this input."""


class ParseError(InputError):
    def __init__(self, message, line=1, column=1, context=""):
        self.line = line
        self.column = column
        self.context = context
        where = f"{context}: " if context else ""
        super().__init__(f"{where}line {line}, column {column}: {message}")
