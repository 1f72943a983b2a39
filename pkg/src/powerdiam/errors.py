"""Exception types shared across the package."""


class ResourceLimitError(RuntimeError):
    """A configured cap (states, subsets, elements) would be exceeded.

    ``cap`` is the limit that was hit and ``flag`` the CLI option that raises it.
    """

    def __init__(self, message, cap=None, flag=None):
        super().__init__(message)
        self.cap = cap
        self.flag = flag


class ParseError(ValueError):
    """Malformed textual input; ``position`` is a 0-based character offset."""

    def __init__(self, message, text="", position=None):
        if position is not None:
            message = f"{message} at position {position}"
        super().__init__(message)
        self.text = text
        self.position = position
