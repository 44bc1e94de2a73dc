"""Exception types shared across the package."""


class AlphabetError(ValueError):
    """A symbol or alphabet does not match what an operation expects."""


class CompositionError(ValueError):
    """Recomposition hit a joint state/input with zero or several candidate outputs."""

    def __init__(self, kind, word, message=None):
        self.kind = kind  # "zero-output" or "ambiguous"
        self.word = tuple(word)
        super().__init__(message or f"{kind} at input word {' '.join(self.word) or 'ε'}")


class TableError(RuntimeError):
    """An observation table operation was called on a table that violates its precondition."""


class CounterexampleError(ValueError):
    """The word handed over as a counterexample does not distinguish hypothesis and target."""


class SearchLimitError(RuntimeError):
    """A product-state search exceeded its configured cap."""

    def __init__(self, explored, cap):
        self.explored = explored
        self.cap = cap
        super().__init__(f"explored {explored} joint states, cap is {cap}; search incomplete")
