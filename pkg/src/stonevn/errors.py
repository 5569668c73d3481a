"""Exception types shared across the package."""


class ContractError(ValueError):
    """An operation was called outside its precondition."""


class ResourceError(RuntimeError):
    """An enumeration would exceed the configured size bound."""


class DomainError(ArithmeticError):
    """A floating-point operation left the finite reals."""


class ParseError(ValueError):
    """Malformed textual input.  Carries a 1-based line/column when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}, column {column})"
        super().__init__(message + where)
