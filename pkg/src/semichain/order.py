"""Chains, antichains, and the exact searches that measure them.

A chain is a set A with ``xy in {x, y}`` for all x, y in A (so it consists of
idempotents); an antichain has ``xy not in {x, y}`` for all distinct x, y.
Both are cliques of a symmetric compatibility graph, which is what
:func:`max_clique` searches.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .sgcore import CayleyTable, ElementSet
from .structure import idempotents

DEFAULT_NODE_BUDGET = 5_000_000
BUDGET_ENV = "SEMICHAIN_NODE_BUDGET"


class CliqueBudgetExceeded(RuntimeError):
    """The search ran out of nodes; ``best`` is the largest clique seen so far."""

    def __init__(self, best: ElementSet, nodes: int):
        self.best = best
        self.nodes = nodes
        super().__init__(f"clique search exceeded {nodes} nodes (best so far: {len(best)})")


def default_node_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    return int(raw) if raw else DEFAULT_NODE_BUDGET


def is_chain(table: CayleyTable, a: ElementSet) -> bool:
    t = table.rows
    members = list(a)
    for x in members:
        row = t[x]
        for y in members:
            p = row[y]
            if p != x and p != y:
                return False
    return True


def is_antichain(table: CayleyTable, a: ElementSet) -> bool:
    t = table.rows
    members = list(a)
    for x in members:
        row = t[x]
        for y in members:
            if x != y and (row[y] == x or row[y] == y):
                return False
    return True


@dataclass(frozen=True)
class CompatGraph:
    """Undirected graph whose vertex ``i`` stands for element ``vertices[i]``.

    ``adjacency[i]`` is a bitmask over vertex positions.
    """

    universe_order: int
    vertices: tuple[int, ...]
    adjacency: tuple[int, ...]
    mode: str | None = None

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]]) -> "CompatGraph":
        adj = [0] * vertex_count
        for u, v in edges:
            if u == v:
                raise ValueError("self-loops are not allowed")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(vertex_count, tuple(range(vertex_count)), tuple(adj))

    @classmethod
    def from_matrix(cls, matrix) -> "CompatGraph":
        m = np.asarray(matrix, dtype=bool)
        if m.shape[0] != m.shape[1] or not np.array_equal(m, m.T) or m.diagonal().any():
            raise ValueError("adjacency must be square, symmetric, with an empty diagonal")
        n = m.shape[0]
        return cls.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if m[i, j]))

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    def matrix(self) -> np.ndarray:
        n = self.vertex_count
        return np.array([[bool(self.adjacency[i] >> j & 1) for j in range(n)] for i in range(n)])

    def edges(self) -> list[tuple[int, int]]:
        """Edges as element pairs ``(u, v)`` with ``u < v``."""
        out = []
        for i, row in enumerate(self.adjacency):
            for j in range(i + 1, self.vertex_count):
                if row >> j & 1:
                    u, v = self.vertices[i], self.vertices[j]
                    out.append((min(u, v), max(u, v)))
        return sorted(out)

    def adjacency_lists(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in self.edges():
            adj[u].append(v)
            adj[v].append(u)
        return {k: sorted(vs) for k, vs in adj.items()}

    def edge_list_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges())

    def with_edge(self, i: int, j: int) -> "CompatGraph":
        adj = list(self.adjacency)
        adj[i] |= 1 << j
        adj[j] |= 1 << i
        return CompatGraph(self.universe_order, self.vertices, tuple(adj), self.mode)


def _graph(table: CayleyTable, vertices: Sequence[int], mode: str) -> CompatGraph:
    t = table.rows
    k = len(vertices)
    adj = [0] * k
    for i in range(k):
        x = vertices[i]
        for j in range(i + 1, k):
            y = vertices[j]
            xy, yx = t[x][y], t[y][x]
            if mode == "chain":
                ok = xy in (x, y) and yx in (x, y)
            else:
                ok = xy not in (x, y) and yx not in (x, y)
            if ok:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CompatGraph(table.order, tuple(vertices), tuple(adj), mode)


def chain_graph(table: CayleyTable) -> CompatGraph:
    return _graph(table, list(idempotents(table)), "chain")


def antichain_graph(table: CayleyTable) -> CompatGraph:
    return _graph(table, list(range(table.order)), "antichain")


def _color_bound(p: int, adj: Sequence[int]) -> int:
    """Number of colors used by greedy sequential coloring of the vertex set ``p``."""
    colors = 0
    while p:
        colors += 1
        q = p
        while q:
            low = q & -q
            v = low.bit_length() - 1
            q &= ~adj[v] & ~low
            p &= ~low
    return colors


def max_clique(graph: CompatGraph, node_budget: int | None = None) -> ElementSet:
    """Exact maximum clique by branch and bound with a greedy-coloring bound.

    Vertices are ranked by descending degree (ties by position). Among all
    maximum cliques the one returned is lexicographically least with respect
    to that rank. Raises :class:`CliqueBudgetExceeded` rather than
    returning an unproven answer.
    """
    if node_budget is None:
        node_budget = default_node_budget()
    n = graph.vertex_count
    if n == 0:
        return ElementSet(graph.universe_order)
    degree = [row.bit_count() for row in graph.adjacency]
    rank = sorted(range(n), key=lambda i: (-degree[i], i))
    pos = {v: i for i, v in enumerate(rank)}
    adj = [0] * n
    for i, v in enumerate(rank):
        m = 0
        for w in range(n):
            if graph.adjacency[v] >> w & 1:
                m |= 1 << pos[w]
        adj[i] = m

    best = [0]
    best_size = [0]
    nodes = [0]

    def to_set(mask: int) -> ElementSet:
        out = []
        while mask:
            low = mask & -mask
            out.append(graph.vertices[rank[low.bit_length() - 1]])
            mask ^= low
        return ElementSet.of(graph.universe_order, out)

    # Include-before-exclude on the lowest-ranked candidate enumerates
    # same-size cliques in lexicographic order, so only strict improvements
    # are kept and ties are pruned.
    def expand(clique: int, size: int, cand: int) -> None:
        nodes[0] += 1
        if nodes[0] > node_budget:
            raise CliqueBudgetExceeded(to_set(best[0]), node_budget)
        if not cand:
            if size > best_size[0]:
                best[0], best_size[0] = clique, size
            return
        if size + cand.bit_count() <= best_size[0]:
            return
        if size + _color_bound(cand, adj) <= best_size[0]:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        expand(clique | low, size + 1, cand & adj[v])
        expand(clique, size, cand & ~low)

    expand(0, 0, (1 << n) - 1)
    return to_set(best[0])


def max_chain(table: CayleyTable, node_budget: int | None = None) -> ElementSet:
    return max_clique(chain_graph(table), node_budget)


def max_antichain(table: CayleyTable, node_budget: int | None = None) -> ElementSet:
    return max_clique(antichain_graph(table), node_budget)


def max_chain_size(table: CayleyTable, node_budget: int | None = None) -> int:
    return len(max_chain(table, node_budget))


def max_antichain_size(table: CayleyTable, node_budget: int | None = None) -> int:
    return len(max_antichain(table, node_budget))


def is_semilattice(table: CayleyTable) -> bool:
    t = table.products
    return bool(np.array_equal(t, t.T) and np.array_equal(t.diagonal(), np.arange(table.order)))


def _max_matching(succ: Sequence[Sequence[int]], n: int) -> list[int]:
    """Augmenting-path bipartite matching; returns ``match_right[y] = x`` or -1."""
    match_right = [-1] * n

    def augment(x: int, seen: list[bool]) -> bool:
        for y in succ[x]:
            if seen[y]:
                continue
            seen[y] = True
            if match_right[y] == -1 or augment(match_right[y], seen):
                match_right[y] = x
                return True
        return False

    for x in range(n):
        augment(x, [False] * n)
    return match_right


def min_chain_cover(table: CayleyTable) -> list[ElementSet]:
    """Fewest chains covering a semilattice, via bipartite matching on ``x < y``.

    The order is ``x <= y`` iff ``xy = yx = x``. Chains are returned sorted by
    their least element, each listed bottom-up in iteration order.
    """
    if not is_semilattice(table):
        raise ValueError("chain covers are only defined here for semilattices")
    n = table.order
    t = table.rows
    succ = [[y for y in range(n) if y != x and t[x][y] == x] for x in range(n)]
    match_right = _max_matching(succ, n)
    nxt = [-1] * n
    for y, x in enumerate(match_right):
        if x != -1:
            nxt[x] = y
    has_pred = [m != -1 for m in match_right]
    chains = []
    for start in range(n):
        if has_pred[start]:
            continue
        members = []
        v = start
        while v != -1:
            members.append(v)
            v = nxt[v]
        chains.append(ElementSet.of(n, members))
    return sorted(chains, key=lambda c: next(iter(c)))
