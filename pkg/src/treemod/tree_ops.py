"""Spanning-tree machinery.

Exhaustive enumeration (contraction-deletion), Kirchhoff counting via a
fraction-free determinant, the deterministic MST separation oracle, a
depth-first edge-disjoint tree packing search, and the two-tree witness
construction for pairs of edges in a biconnected graph.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    DisconnectedError,
    NotBiconnectedError,
    SameEdgeError,
    TooLargeForBruteForceError,
    TooManyTreesError,
    UnknownEdgeIdError,
)
from .graph_core import Multigraph, as_density_map, require_analyzable

SpanningTree = frozenset  # of edge ids


class _UnionFind:
    __slots__ = ("parent", "rank")

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def minimum_spanning_tree(G: Multigraph, rho) -> tuple[frozenset, object]:
    """Kruskal MST under the density ``rho``; ties go to the lower edge id.

    The tie rule makes the output deterministic, which the constraint
    generation loops rely on.
    """
    require_analyzable(G)
    vals = as_density_map(rho, G)
    order = sorted(G.edges, key=lambda e: (vals[e[0]], e[0]))
    uf = _UnionFind(G.n)
    picked = []
    total = 0
    for eid, u, v in order:
        if uf.union(u, v):
            picked.append(eid)
            total = total + vals[eid]
            if len(picked) == G.n - 1:
                break
    if len(picked) != G.n - 1:
        raise DisconnectedError()
    return frozenset(picked), total


def tree_length(gamma, rho) -> object:
    """Total cost ``sum(rho(e) for e in gamma)``; exact when rho is exact."""
    vals = dict(rho)
    total = 0
    for eid in gamma:
        if eid not in vals:
            raise UnknownEdgeIdError(eid)
        total = total + vals[eid]
    return total


def restrict(gamma, A) -> frozenset:
    """Restriction of an edge set onto ``A``: plain intersection."""
    return frozenset(gamma) & frozenset(A)


def _bareiss_det(A: list[list[int]]) -> int:
    """Fraction-free determinant of an integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    A = [row[:] for row in A]
    sign = 1
    denom = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for j in range(k + 1, n):
                if A[j][k] != 0:
                    A[k], A[j] = A[j], A[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = A[k][k]
        for i in range(k + 1, n):
            row_i = A[i]
            row_k = A[k]
            aik = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - aik * row_k[j]) // denom
            row_i[k] = 0
        denom = pivot
    return sign * A[n - 1][n - 1]


def count_spanning_trees(G: Multigraph) -> int:
    """Exact spanning-tree count: reduced Laplacian determinant.

    Parallel edges enter as multiplicities, so the count matches the
    exhaustive enumeration on multigraphs.
    """
    require_analyzable(G)
    n = G.n
    L = [[0] * n for _ in range(n)]
    for _, u, v in G.edges:
        L[u][u] += 1
        L[v][v] += 1
        L[u][v] -= 1
        L[v][u] -= 1
    reduced = [row[: n - 1] for row in L[: n - 1]]
    return _bareiss_det(reduced)


def _connected_edge_list(edges: list[tuple[int, int, int]], n: int) -> bool:
    uf = _UnionFind(n)
    comps = n
    for _, u, v in edges:
        if uf.union(u, v):
            comps -= 1
            if comps == 1:
                return True
    return comps == 1


def enumerate_spanning_trees(G: Multigraph, cap: int = 10**6) -> list[frozenset]:
    """All spanning trees, canonically ordered, guarded by a count cap."""
    require_analyzable(G)
    count = count_spanning_trees(G)
    if count > cap:
        raise TooManyTreesError(count, cap)
    trees: list[frozenset] = []

    def rec(edges: list[tuple[int, int, int]], n: int, chosen: tuple):
        if n == 1:
            trees.append(frozenset(chosen))
            return
        eid, u, v = edges[0]
        rest = edges[1:]
        # Delete branch, valid only while the graph stays connected.
        if _connected_edge_list(rest, n):
            rec(rest, n, chosen)
        # Contract branch: merge v into u, relabel above v, drop new loops.
        contracted = []
        for eid2, x, y in rest:
            x2 = u if x == v else x
            y2 = u if y == v else y
            if x2 == y2:
                continue
            if x2 > v:
                x2 -= 1
            if y2 > v:
                y2 -= 1
            contracted.append((eid2, x2, y2))
        rec(contracted, n - 1, chosen + (eid,))

    edges = sorted(G.edges)
    rec(list(edges), G.n, ())
    trees.sort(key=lambda t: tuple(sorted(t)))
    if len(trees) != count:
        raise AssertionError(f"enumeration found {len(trees)} trees, Kirchhoff says {count}")
    return trees


@dataclass(frozen=True)
class PackingCertificate:
    """Witness for a maximum edge-disjoint spanning tree packing.

    Without weights, ``trees`` are pairwise edge-disjoint and ``count`` is
    their number. With integer weights, ``multiplicity_weights`` maps each
    distinct tree to its multiplicity; the packing uses each edge at most
    ``sigma(e)`` times and ``count`` is the total multiplicity.
    """

    trees: tuple[frozenset, ...]
    count: int
    multiplicity_weights: dict | None = None


def max_disjoint_tree_packing(G: Multigraph, sigma=None,
                              vertex_cap: int = 10, expanded_edge_cap: int = 24,
                              tree_cap: int = 10**6) -> PackingCertificate:
    """Exhaustive maximum packing of edge-disjoint spanning trees.

    With ``sigma`` (positive integers), edges act as capacities: the packed
    multiset of trees may repeat a tree up to capacity, matching a packing
    in the graph with ``sigma(e)`` parallel copies of each edge.
    """
    require_analyzable(G)
    if G.n > vertex_cap:
        raise TooLargeForBruteForceError(
            f"{G.n} vertices above the brute-force cap {vertex_cap}")
    if sigma is None:
        caps = {eid: 1 for eid, _, _ in G.edges}
    else:
        caps = {}
        for eid, _, _ in G.edges:
            w = Fraction(sigma[eid])
            if w.denominator != 1 or w < 1:
                raise TooLargeForBruteForceError(
                    f"packing weights must be positive integers, got {sigma[eid]} on edge {eid}")
            caps[eid] = int(w)
    total_cap = sum(caps.values())
    if total_cap > expanded_edge_cap:
        raise TooLargeForBruteForceError(
            f"expanded edge count {total_cap} above the cap {expanded_edge_cap}")

    trees = enumerate_spanning_trees(G, cap=tree_cap)
    tree_edges = [tuple(sorted(t)) for t in trees]
    size = G.n - 1
    hard_bound = total_cap // size

    best: list[int] = []

    def dfs(start: int, remaining: int, seq: list[int]):
        nonlocal best
        if len(seq) > len(best):
            best = seq[:]
            if len(best) == hard_bound:
                return True
        if len(seq) + remaining // size <= len(best):
            return False
        for j in range(start, len(trees)):
            te = tree_edges[j]
            if all(caps[e] >= 1 for e in te):
                for e in te:
                    caps[e] -= 1
                seq.append(j)
                done = dfs(j, remaining - size, seq)
                seq.pop()
                for e in te:
                    caps[e] += 1
                if done:
                    return True
        return False

    dfs(0, total_cap, [])
    packed = [trees[j] for j in best]
    if sigma is None:
        return PackingCertificate(tuple(packed), len(packed), None)
    mult = Counter(packed)
    return PackingCertificate(tuple(mult), len(packed), dict(mult))


def _two_vertex_disjoint_paths(adj: list[set[int]], s: int, t: int) -> list[list[int]] | None:
    """Two internally vertex-disjoint s-t paths via unit-capacity max flow.

    Vertices are split into in/out nodes with capacity 1 (2 at the
    endpoints); returns the two paths as vertex sequences, or None.
    """
    n = len(adj)

    def node_in(x):
        return 2 * x

    def node_out(x):
        return 2 * x + 1

    cap: dict[tuple[int, int], int] = {}
    succ: dict[int, list[int]] = {i: [] for i in range(2 * n)}

    def add_arc(a, b, c):
        if (a, b) not in cap:
            cap[(a, b)] = 0
            cap[(b, a)] = cap.get((b, a), 0)
            succ[a].append(b)
            if a not in succ[b]:
                succ[b].append(a)
        cap[(a, b)] += c

    for x in range(n):
        add_arc(node_in(x), node_out(x), 2 if x in (s, t) else 1)
    for x in range(n):
        for y in adj[x]:
            add_arc(node_out(x), node_in(y), 1)

    src, dst = node_out(s), node_in(t)
    flow: dict[tuple[int, int], int] = {}

    def bfs_augment() -> bool:
        prev = {src: None}
        queue = [src]
        qi = 0
        while qi < len(queue):
            u = queue[qi]
            qi += 1
            if u == dst:
                break
            for w in succ[u]:
                residual = cap.get((u, w), 0) - flow.get((u, w), 0) + flow.get((w, u), 0)
                if residual > 0 and w not in prev:
                    prev[w] = u
                    queue.append(w)
        if dst not in prev:
            return False
        w = dst
        while prev[w] is not None:
            u = prev[w]
            back = min(flow.get((w, u), 0), 1)
            if back:
                flow[(w, u)] -= 1
            else:
                flow[(u, w)] = flow.get((u, w), 0) + 1
            w = u
        return True

    if not (bfs_augment() and bfs_augment()):
        return None

    paths = []
    for _ in range(2):
        path = [s]
        cur = node_out(s)
        while cur != node_in(t):
            nxt = next(w for w in succ[cur] if flow.get((cur, w), 0) > 0)
            flow[(cur, nxt)] -= 1
            cur = nxt
            if cur % 2 == 0:
                path.append(cur // 2)
            cur = node_out(cur // 2) if cur != node_in(t) else cur
        paths.append(path)
    return paths


def _cycle_through_edges(G: Multigraph, e1: int, e2: int) -> frozenset:
    """A cycle (edge-id set) containing both edges, in a biconnected graph.

    Both edges are subdivided by a midpoint; two internally vertex-disjoint
    paths between the midpoints then close up into the cycle.
    """
    ends = G.endpoints()
    a, b = ends[e1]
    c, d = ends[e2]
    m1, m2 = G.n, G.n + 1
    adj: list[set[int]] = [set() for _ in range(G.n + 2)]
    pair_edge: dict[tuple[int, int], int] = {}
    for eid, u, v in G.edges:
        if eid in (e1, e2):
            continue
        adj[u].add(v)
        adj[v].add(u)
        key = (min(u, v), max(u, v))
        if key not in pair_edge or eid < pair_edge[key]:
            pair_edge[key] = eid
    for x, y in ((a, m1), (m1, b), (c, m2), (m2, d)):
        adj[x].add(y)
        adj[y].add(x)

    paths = _two_vertex_disjoint_paths(adj, m1, m2)
    if paths is None:
        raise NotBiconnectedError("no cycle through the requested edge pair")
    cycle = {e1, e2}
    for path in paths:
        inner = path[1:-1]
        for x, y in zip(inner, inner[1:]):
            cycle.add(pair_edge[(min(x, y), max(x, y))])
    return frozenset(cycle)


def _kruskal_extend(G: Multigraph, base: frozenset) -> frozenset:
    """Grow an acyclic edge set into a spanning tree, lowest ids first."""
    uf = _UnionFind(G.n)
    ends = G.endpoints()
    picked = set()
    for eid in sorted(base):
        u, v = ends[eid]
        if not uf.union(u, v):
            raise AssertionError("base edge set contains a cycle")
        picked.add(eid)
    for eid, u, v in sorted(G.edges):
        if len(picked) == G.n - 1:
            break
        if eid in picked:
            continue
        if uf.union(u, v):
            picked.add(eid)
    if len(picked) != G.n - 1:
        raise DisconnectedError()
    return frozenset(picked)


def witness_trees(G: Multigraph, e1: int, e2: int) -> tuple[frozenset, frozenset]:
    """Two spanning trees differing exactly in ``{e1}`` vs ``{e2}``.

    Requires a vertex-biconnected graph. The first tree contains ``e1``
    but not ``e2``; swapping the pair yields the second.
    """
    from .graph_core import is_vertex_biconnected

    if e1 == e2:
        raise SameEdgeError(e1)
    ends = G.endpoints()
    if e1 not in ends:
        raise UnknownEdgeIdError(e1)
    if e2 not in ends:
        raise UnknownEdgeIdError(e2)
    if not is_vertex_biconnected(G):
        raise NotBiconnectedError()
    if G.n == 2:
        gamma1, gamma2 = frozenset([e1]), frozenset([e2])
    else:
        cycle = _cycle_through_edges(G, e1, e2)
        gamma1 = _kruskal_extend(G, cycle - {e2})
        gamma2 = (gamma1 - {e1}) | {e2}
    if gamma1 - gamma2 != {e1} or gamma2 - gamma1 != {e2}:
        raise AssertionError("witness construction violated its contract")
    return gamma1, gamma2
