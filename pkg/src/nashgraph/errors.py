"""Exception hierarchy shared by all modules."""


class GraphError(ValueError):
    """Base class for every error raised by nashgraph."""


class InvalidGraphError(GraphError):
    """A graph violates a structural invariant.

    ``kind`` names the violated invariant (``"self-loop"``, ``"dangling edge"``,
    ``"disconnected"``, ``"negative genus"``, ``"duplicate id"``, ``"empty"``).
    """

    def __init__(self, kind: str, message: str):
        super().__init__(f"{kind}: {message}")
        self.kind = kind


class SearchLimitError(GraphError):
    """An exhaustive search was refused because the input exceeds a size cap."""

    def __init__(self, what: str, size: int, limit: int):
        super().__init__(
            f"{what}: {size} vertices exceeds search limit {limit}; raise the limit to proceed"
        )
        self.size = size
        self.limit = limit


class NotNegativeDefiniteError(GraphError):
    pass


class NotContractibleError(GraphError):
    pass


class SelfTangencyError(NotContractibleError):
    pass


class UndecidableError(GraphError):
    """The minimal model leaves the weighted-graph category."""


class NotSimpleError(GraphError):
    pass


class NotALoopError(GraphError):
    pass


class NotAWeightDecreaseError(GraphError):
    pass


class NotAnEmbeddingError(GraphError):
    pass


class BaseMismatchError(GraphError):
    pass


class InconsistencyError(GraphError):
    """An internal guard fired: two proven rules disagree, or a checked postcondition failed."""


class TransferContradictionError(InconsistencyError):
    """A transferred arrow is forbidden on the target graph."""


class PreconditionError(GraphError):
    pass


class TooManyPairsError(GraphError):
    pass
