"""Exception hierarchy shared by all fimtool modules."""


class FimError(Exception):
    """Base class for every error raised by fimtool."""


class PreconditionError(FimError, ValueError):
    """An operation was called outside its domain."""


class ParseError(FimError, ValueError):
    def __init__(self, message: str, text: str = "", position: int | None = None):
        self.text = text
        self.position = position
        if position is not None:
            message = f"{message} at position {position}"
            if text:
                message += f"\n  {text}\n  {' ' * position}^"
        super().__init__(message)


class EmptyLanguageError(PreconditionError):
    """Constants were requested for an automaton with empty language."""


class ConstantOverflowError(FimError):
    """A constant exceeds the configured ceiling, so enumeration is refused."""

    def __init__(self, message: str, value: int | None = None, ceiling: int | None = None):
        self.value = value
        self.ceiling = ceiling
        super().__init__(message)
