class ParseError(ValueError):
    """Raised when a tree, forest, permutation or element literal cannot be read."""

    def __init__(self, message: str, text: str = "", position: int = 0):
        super(ParseError, self).__init__(f"{message} (position {position} in {text!r})")
        self.text = text
        self.position = position


class ContractViolation(ValueError):
    """Raised when an operation is called outside its documented preconditions.

    The contract name says which precondition failed, e.g. "arity" for mismatched root / leaf counts, "bound" for a size
    over the configured limit, "alpha-range" for a parameter outside [0, 1] and "depth" for a strict depth hypothesis.
    """

    def __init__(self, contract: str, message: str):
        super(ContractViolation, self).__init__(f"[{contract}] {message}")
        self.contract = contract


class InvariantError(RuntimeError):
    """Raised when an internal consistency check fails (a bug, not a user error)."""
