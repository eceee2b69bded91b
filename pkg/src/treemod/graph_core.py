"""Weighted multigraph core: parsing, partitions, shrunk graphs, predicates.

Conventions used across the package:

* Vertices are whitespace-free tokens mapped to dense integer indices in
  order of first appearance; all structural code works on the indices.
* Edges carry immutable integer ids, dense ``0..m-1`` on parsed graphs.
  Induced subgraphs and shrunk graphs re-index vertices but preserve the
  original edge ids, so densities computed on pieces stay comparable
  edge-by-edge with the parent graph.
* Edge weights are exact `fractions.Fraction` values end to end; numeric
  engines convert on entry.
* Parallel edges are allowed, self-loops are not.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadRationalError,
    BlocksDoNotCoverVError,
    DisconnectedError,
    EmptyGraphError,
    EmptyVertexSetError,
    InfeasiblePartitionError,
    MismatchedVertexSetsError,
    NonPositiveWeightError,
    SelfLoopError,
    TrivialSinglePartitionError,
    UnknownEdgeIdError,
)

Rational = Fraction


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph with positive rational edge weights.

    ``edges[i] = (edge_id, u, v)`` with ``u``, ``v`` vertex indices into
    ``names``; ``sigma[i]`` is the weight of ``edges[i]``.
    """

    names: tuple[str, ...]
    edges: tuple[tuple[int, int, int], ...]
    sigma: tuple[Fraction, ...]

    @property
    def n(self) -> int:
        return len(self.names)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_ids(self) -> tuple[int, ...]:
        return tuple(e[0] for e in self.edges)

    def sigma_map(self) -> dict[int, Fraction]:
        return {e[0]: w for e, w in zip(self.edges, self.sigma)}

    def endpoints(self) -> dict[int, tuple[int, int]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    def vertex_index(self, name: str) -> int:
        return self.names.index(name)

    def adjacency(self) -> list[list[tuple[int, int]]]:
        """Per-vertex list of ``(neighbour, edge_id)`` pairs."""
        adj: list[list[tuple[int, int]]] = [[] for _ in range(self.n)]
        for eid, u, v in self.edges:
            adj[u].append((v, eid))
            adj[v].append((u, eid))
        return adj

    def adjacency_masks(self) -> list[int]:
        """Per-vertex bitmask of neighbours (ignores multiplicity)."""
        masks = [0] * self.n
        for _, u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return masks


def build_graph(edge_list: Iterable[tuple], names: Iterable[str] | None = None) -> Multigraph:
    """Build a graph from ``(u_name, v_name[, weight])`` tuples.

    Vertex order is first appearance (after the optional ``names`` seed);
    edge ids follow the input order. Weights default to 1.
    """
    name_index: dict[str, int] = {}
    ordered: list[str] = []
    if names is not None:
        for nm in names:
            if nm not in name_index:
                name_index[nm] = len(ordered)
                ordered.append(nm)
    edges: list[tuple[int, int, int]] = []
    sigma: list[Fraction] = []
    for lineno, item in enumerate(edge_list, start=1):
        u_name, v_name = str(item[0]), str(item[1])
        w = Fraction(item[2]) if len(item) > 2 else Fraction(1)
        if u_name == v_name:
            raise SelfLoopError(lineno, u_name)
        if w <= 0:
            raise NonPositiveWeightError(lineno, str(w))
        for nm in (u_name, v_name):
            if nm not in name_index:
                name_index[nm] = len(ordered)
                ordered.append(nm)
        edges.append((len(edges), name_index[u_name], name_index[v_name]))
        sigma.append(w)
    if not edges:
        raise EmptyGraphError()
    return Multigraph(tuple(ordered), tuple(edges), tuple(sigma))


def parse_graph(text: str) -> Multigraph:
    """Parse the edge-list format: ``<u> <v> [w]`` per line, ``#`` comments.

    Weights are rationals ``p/q`` or decimals, converted exactly from
    their digits; omitted weights default to 1.
    """
    items: list[tuple] = []
    linenos: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) not in (2, 3):
            raise BadRationalError(lineno, line)
        if len(parts) == 3:
            try:
                w = Fraction(parts[2])
            except (ValueError, ZeroDivisionError):
                raise BadRationalError(lineno, parts[2]) from None
            if w <= 0:
                raise NonPositiveWeightError(lineno, parts[2])
            items.append((parts[0], parts[1], w))
        else:
            items.append((parts[0], parts[1]))
        linenos.append(lineno)
    if not items:
        raise EmptyGraphError("no edges found in input")
    try:
        return build_graph(items)
    except (SelfLoopError, NonPositiveWeightError) as exc:
        # Re-map the builder's sequential numbering to source line numbers.
        exc.line = linenos[exc.line - 1]
        raise


def serialize_graph(G: Multigraph) -> str:
    lines = [f"{G.names[u]} {G.names[v]} {w.numerator}/{w.denominator}"
             for (_, u, v), w in zip(G.edges, G.sigma)]
    return "\n".join(lines) + "\n"


def with_sigma(G: Multigraph, sigma: Mapping[int, Fraction]) -> Multigraph:
    """Return a copy of ``G`` with weights replaced via an edge-id map."""
    new = []
    for eid, _, _ in G.edges:
        if eid not in sigma:
            raise UnknownEdgeIdError(eid)
        w = Fraction(sigma[eid])
        if w <= 0:
            raise NonPositiveWeightError(0, str(w))
        new.append(w)
    return Multigraph(G.names, G.edges, tuple(new))


def resolve_sigma(G: Multigraph, sigma=None) -> dict[int, Fraction]:
    """Edge-id weight map from ``sigma`` (mapping or None for the graph's own)."""
    if sigma is None:
        return G.sigma_map()
    out = {}
    for eid, _, _ in G.edges:
        if eid not in sigma:
            raise UnknownEdgeIdError(eid)
        w = Fraction(sigma[eid])
        if w <= 0:
            raise NonPositiveWeightError(0, str(w))
        out[eid] = w
    return out


def is_connected(G: Multigraph) -> bool:
    if G.n == 0:
        return False
    masks = G.adjacency_masks()
    seen = 1
    frontier = 1
    full = (1 << G.n) - 1
    while frontier:
        nxt = 0
        v = frontier
        while v:
            low = v & -v
            nxt |= masks[low.bit_length() - 1]
            v ^= low
        frontier = nxt & ~seen
        seen |= frontier
    return seen == full


def require_analyzable(G: Multigraph) -> None:
    """Reject disconnected or single-vertex inputs, shared by analysis ops."""
    if G.n < 2 or not is_connected(G):
        raise DisconnectedError()


class Density(Mapping):
    """Nonnegative edge vector keyed by edge id.

    Values are `Fraction` in exact mode or floats in numeric mode; mixing
    is allowed only at the boundary where snapping converts one to the
    other.
    """

    __slots__ = ("_values",)

    def __init__(self, values: Mapping[int, object]):
        vals = {}
        for eid, x in values.items():
            if x < 0:
                raise ValueError(f"negative density on edge {eid}: {x}")
            vals[int(eid)] = x
        self._values = vals

    def __getitem__(self, eid):
        return self._values[eid]

    def __iter__(self):
        return iter(self._values)

    def __len__(self):
        return len(self._values)

    def __repr__(self):
        return f"Density({self._values!r})"

    def is_exact(self) -> bool:
        return all(isinstance(x, (Fraction, int)) for x in self._values.values())


def as_density_map(rho, G: Multigraph | None = None) -> dict:
    """Coerce a Density/mapping to a plain dict, checking edge coverage."""
    vals = dict(rho)
    if G is not None:
        for eid, _, _ in G.edges:
            if eid not in vals:
                raise UnknownEdgeIdError(eid)
    return vals


@dataclass(frozen=True)
class Partition:
    """Vertex partition with derived cut set and feasibility flag.

    Blocks are stored sorted by minimal member so equal partitions compare
    and hash identically.
    """

    blocks: tuple[frozenset[int], ...]
    k: int
    cut_set: frozenset[int]
    feasible: bool

    def vertex_set(self) -> frozenset[int]:
        out: set[int] = set()
        for b in self.blocks:
            out.update(b)
        return frozenset(out)

    def block_of(self) -> dict[int, int]:
        owner = {}
        for i, b in enumerate(self.blocks):
            for v in b:
                owner[v] = i
        return owner

    def signature(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(b)) for b in self.blocks)


def _check_blocks(G: Multigraph, blocks: Iterable[Iterable[int]]) -> list[frozenset[int]]:
    blks = [frozenset(b) for b in blocks]
    if any(not b for b in blks):
        raise BlocksDoNotCoverVError("empty block")
    seen: set[int] = set()
    total = 0
    for b in blks:
        total += len(b)
        seen.update(b)
    if total != len(seen) or seen != set(range(G.n)):
        raise BlocksDoNotCoverVError()
    return sorted(blks, key=min)


def _block_connected(block: frozenset[int], masks: list[int]) -> bool:
    block_mask = 0
    for v in block:
        block_mask |= 1 << v
    start = 1 << min(block)
    seen = start
    frontier = start
    while frontier:
        nxt = 0
        v = frontier
        while v:
            low = v & -v
            nxt |= masks[low.bit_length() - 1]
            v ^= low
        frontier = nxt & block_mask & ~seen
        seen |= frontier
    return seen == block_mask


def cut_set_and_feasibility(G: Multigraph, blocks: Iterable[Iterable[int]]) -> tuple[frozenset[int], bool]:
    """Cut set of a partition and whether all blocks induce connected subgraphs."""
    blks = _check_blocks(G, blocks)
    owner = {}
    for i, b in enumerate(blks):
        for v in b:
            owner[v] = i
    cut = frozenset(eid for eid, u, v in G.edges if owner[u] != owner[v])
    masks = G.adjacency_masks()
    feasible = all(_block_connected(b, masks) for b in blks)
    return cut, feasible


def make_partition(G: Multigraph, blocks: Iterable[Iterable[int]]) -> Partition:
    blks = _check_blocks(G, blocks)
    cut, feasible = cut_set_and_feasibility(G, blks)
    return Partition(tuple(blks), len(blks), cut, feasible)


def partition_from_names(G: Multigraph, name_blocks: Iterable[Iterable[str]]) -> Partition:
    idx = {nm: i for i, nm in enumerate(G.names)}
    return make_partition(G, [[idx[nm] for nm in b] for b in name_blocks])


def singletons_partition(G: Multigraph) -> Partition:
    return make_partition(G, [[v] for v in range(G.n)])


def partition_weight(G: Multigraph, P: Partition, sigma=None) -> Fraction:
    """Cut weight per merged block: ``sigma(E_P) / (k_P - 1)``, exact."""
    if P.k < 2:
        raise TrivialSinglePartitionError()
    if not P.feasible:
        raise InfeasiblePartitionError()
    sig = resolve_sigma(G, sigma)
    return sum((sig[eid] for eid in P.cut_set), Fraction(0)) / (P.k - 1)


def induced_subgraph(G: Multigraph, S: Iterable[int]) -> Multigraph:
    """Subgraph on vertex set ``S`` keeping edge ids and weights."""
    sset = sorted(set(S))
    if not sset:
        raise EmptyVertexSetError()
    local = {v: i for i, v in enumerate(sset)}
    edges = []
    sigma = []
    for (eid, u, v), w in zip(G.edges, G.sigma):
        if u in local and v in local:
            edges.append((eid, local[u], local[v]))
            sigma.append(w)
    return Multigraph(tuple(G.names[v] for v in sset), tuple(edges), tuple(sigma))


def shrink(G: Multigraph, P: Partition) -> Multigraph:
    """Quotient of ``G`` by the blocks of ``P``; self-loops dropped, ids kept.

    The shrunk vertex of each block is named after its minimal member.
    """
    if P.vertex_set() != frozenset(range(G.n)):
        raise BlocksDoNotCoverVError()
    owner = P.block_of()
    edges = []
    sigma = []
    for (eid, u, v), w in zip(G.edges, G.sigma):
        bu, bv = owner[u], owner[v]
        if bu != bv:
            edges.append((eid, bu, bv))
            sigma.append(w)
    names = tuple(G.names[min(b)] for b in P.blocks)
    return Multigraph(names, tuple(edges), tuple(sigma))


def is_finer(P: Partition, Q: Partition) -> bool:
    """True iff every block of Q is a union of blocks of P."""
    if P.vertex_set() != Q.vertex_set():
        raise MismatchedVertexSetsError()
    q_owner = Q.block_of()
    for b in P.blocks:
        owners = {q_owner[v] for v in b}
        if len(owners) > 1:
            return False
    return True


def is_vertex_biconnected(G: Multigraph) -> bool:
    """No articulation point; a 2-vertex multi-edge graph qualifies.

    Parallel edges are handled by tracking the parent *edge* in the DFS,
    so a second copy of the tree edge counts as a back edge.
    """
    if G.n < 2 or not is_connected(G):
        return False
    if G.n == 2:
        return True
    adj = G.adjacency()
    disc = [-1] * G.n
    low = [0] * G.n
    parent = [-1] * G.n
    parent_edge = [-1] * G.n
    disc[0] = low[0] = 0
    timer = 1
    root_children = 0
    stack: list[list[int]] = [[0, 0]]  # (vertex, next neighbour index)
    while stack:
        v, i = stack[-1]
        if i < len(adj[v]):
            stack[-1][1] = i + 1
            w, eid = adj[v][i]
            if eid == parent_edge[v]:
                continue
            if disc[w] == -1:
                disc[w] = low[w] = timer
                timer += 1
                parent[w] = v
                parent_edge[w] = eid
                if v == 0:
                    root_children += 1
                stack.append([w, 0])
            elif disc[w] < low[v]:
                low[v] = disc[w]
        else:
            stack.pop()
            p = parent[v]
            if p != -1:
                if low[v] < low[p]:
                    low[p] = low[v]
                if p != 0 and low[v] >= disc[p]:
                    return False
    return root_children <= 1


@dataclass(frozen=True)
class UsageVector:
    """Edge usage of a family member: a tree indicator or a partition vector."""

    values: Mapping[int, Fraction]
    source: str  # "tree" | "partition"


def tree_usage_vector(G: Multigraph, tree: frozenset[int]) -> UsageVector:
    vals = {eid: Fraction(1 if eid in tree else 0) for eid, _, _ in G.edges}
    return UsageVector(vals, "tree")


def partition_usage_vector(G: Multigraph, P: Partition) -> UsageVector:
    if P.k < 2:
        raise TrivialSinglePartitionError()
    c = Fraction(1, P.k - 1)
    vals = {eid: (c if eid in P.cut_set else Fraction(0)) for eid, _, _ in G.edges}
    return UsageVector(vals, "partition")
