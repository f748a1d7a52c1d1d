"""Exception types shared across the library."""


class InfolatError(Exception):
    """Base class for every error raised by this library."""


class ValidationError(InfolatError):
    """A value violates its structural invariants.

    Covers duplicate or unknown names, non-total function tables,
    malformed partitions, carrier mismatches, and inputs of the wrong
    relational class (not an equivalence, not a preorder, not complete).
    """


class OrderCycleError(ValidationError):
    """Antisymmetry failure: two distinct elements below each other."""

    def __init__(self, message: str, pair: tuple[str, str] | None = None):
        super().__init__(message)
        self.pair = pair


class NotMonotoneError(ValidationError):
    """A function table breaks monotonicity; carries the witness pair."""

    def __init__(self, message: str, witness: tuple[str, str]):
        super().__init__(message)
        self.witness = witness


class CapExceededError(InfolatError):
    """An enumeration or search is larger than its configured bound."""


class ParseError(InfolatError):
    """Workspace text is malformed; carries source position."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col
