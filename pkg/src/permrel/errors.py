"""Exception types shared across the package."""


class PermrelError(Exception):
    pass


class InvalidWordError(PermrelError, ValueError):
    """Word has repeated letters, non-positive letters, or is not a permutation."""


class EmptyInputError(PermrelError, ValueError):
    pass


class InvalidPartitionError(PermrelError, ValueError):
    pass


class DegeneratePartitionError(InvalidPartitionError):
    """Partition has no nontrivial part."""


class ResourceLimitError(PermrelError, RuntimeError):
    pass


class BudgetExceeded(ResourceLimitError):
    """Search-node budget ran out before the count finished."""

    def __init__(self, nodes, budget):
        super().__init__(f"node budget {budget} exhausted after exploring {nodes} nodes")
        self.nodes = nodes
        self.budget = budget
