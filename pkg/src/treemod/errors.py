"""Exception hierarchy.

Three coarse groups drive the CLI exit codes: bad input (1), solver
non-convergence (2), and internal-consistency failures (3). Everything
derives from :class:`TreemodError`.
"""


class TreemodError(Exception):
    pass


class InputError(TreemodError):
    """User-facing input problems: parsing, validation, size guards."""


class SelfLoopError(InputError):
    def __init__(self, line: int, token: str = ""):
        super().__init__(f"self-loop on line {line}: {token}".rstrip(": "))
        self.line = line


class BadRationalError(InputError):
    def __init__(self, line: int, token: str):
        super().__init__(f"bad rational {token!r} on line {line}")
        self.line = line
        self.token = token


class NonPositiveWeightError(InputError):
    def __init__(self, line: int, token: str):
        super().__init__(f"non-positive weight {token!r} on line {line}")
        self.line = line
        self.token = token


class EmptyGraphError(InputError):
    def __init__(self, msg: str = "graph has no edges"):
        super().__init__(msg)


class EmptyVertexSetError(InputError):
    def __init__(self, msg: str = "vertex set is empty"):
        super().__init__(msg)


class DisconnectedError(InputError):
    def __init__(self, msg: str = "graph must be connected with at least 2 vertices"):
        super().__init__(msg)


class BlocksDoNotCoverVError(InputError):
    def __init__(self, msg: str = "blocks do not form a partition of the vertex set"):
        super().__init__(msg)


class TrivialSinglePartitionError(InputError):
    def __init__(self, msg: str = "partition with a single block has no cut"):
        super().__init__(msg)


class InfeasiblePartitionError(InputError):
    def __init__(self, msg: str = "partition has a disconnected block"):
        super().__init__(msg)


class MismatchedVertexSetsError(InputError):
    def __init__(self, msg: str = "partitions are over different vertex sets"):
        super().__init__(msg)


class UnknownEdgeIdError(InputError):
    def __init__(self, edge_id: int):
        super().__init__(f"unknown edge id {edge_id}")
        self.edge_id = edge_id


class SameEdgeError(InputError):
    def __init__(self, edge_id: int):
        super().__init__(f"witness trees need two distinct edges, got {edge_id} twice")


class NotBiconnectedError(InputError):
    def __init__(self, msg: str = "graph is not vertex-biconnected"):
        super().__init__(msg)


class NotAdmissibleError(InputError):
    def __init__(self, msg: str = "density is not admissible for the spanning-tree family"):
        super().__init__(msg)


class TooManyTreesError(InputError):
    def __init__(self, count: int, cap: int):
        super().__init__(f"graph has {count} spanning trees, above the cap {cap}")
        self.count = count
        self.cap = cap


class TooManyTreesForConicLPError(TooManyTreesError):
    pass


class TooManyVerticesError(InputError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"graph has {n} vertices, above the enumeration cap {cap}")
        self.n = n
        self.cap = cap


class TooLargeForBruteForceError(InputError):
    def __init__(self, msg: str):
        super().__init__(msg)


class TooLargeError(InputError):
    def __init__(self, msg: str):
        super().__init__(msg)


class NoEdgesError(InputError):
    def __init__(self, msg: str = "graph has no edges"):
        super().__init__(msg)


class PartitionNotBeurlingError(InputError):
    def __init__(self, msg: str = "partition is not a Beurling partition"):
        super().__init__(msg)


class SupportNotInGammaPError(InputError):
    def __init__(self, msg: str):
        super().__init__(msg)


class IoError(TreemodError):
    def __init__(self, msg: str):
        super().__init__(msg)


class NotConvergedError(TreemodError):
    """Iterative solver failed to reach the requested tolerance."""

    def __init__(self, msg: str, iterations: int = 0):
        super().__init__(msg)
        self.iterations = iterations


class LpNotConvergedError(NotConvergedError):
    pass


class InternalConsistencyError(TreemodError):
    """A theorem-backed postcondition failed; signals a solver bug."""


class CriticalityCheckFailedError(InternalConsistencyError):
    pass
