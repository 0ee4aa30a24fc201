"""Spanning trees of the signed Tait graph, Tutte activities and tree gradings.

Edges are numbered from 1 in crossing order; that order is the one used for
activities.  A spanning tree is represented as a ``frozenset`` of edge numbers.
"""

from __future__ import annotations

from typing import Iterable

from ribbonkh.activity import ActivityWord
from ribbonkh.linkdiag import TaitGraph

MAX_TREE_EDGES = 24


class TreeBoundError(ValueError):
    pass


def _components(vertex_count: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    parent = list(range(vertex_count))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[a] = b
    return [find(x) for x in range(vertex_count)]


def is_connected(graph: TaitGraph) -> bool:
    return len(set(_components(graph.vertex_count, ((u, v) for u, v, _ in graph.edges)))) <= 1


def is_spanning_tree(graph: TaitGraph, tree: Iterable[int]) -> bool:
    tree = set(tree)
    if len(tree) != graph.vertex_count - 1 or any(not 1 <= e <= graph.n for e in tree):
        return False
    chosen = [graph.edges[e - 1][:2] for e in tree]
    return len(set(_components(graph.vertex_count, chosen))) == 1


def enumerate_spanning_trees(graph: TaitGraph, max_edges: int = MAX_TREE_EDGES) -> list[frozenset[int]]:
    """All spanning trees by contraction/deletion on the lowest undecided edge.

    Loops are never in a tree; parallel edges stay distinct.  Trees come out
    sorted by their edge sets in lexicographic order.
    """
    if graph.n > max_edges:
        raise TreeBoundError(f"{graph.n} edges exceeds the enumeration bound {max_edges}")
    if not is_connected(graph):
        raise ValueError("Tait graph is disconnected")
    trees: list[frozenset[int]] = []

    def bridge_like(labels: list[int], pending: list[int], k: int) -> bool:
        # is pending[k] a bridge among the still-available edges?
        comps = _components(
            len(set(labels)),
            ((labels[graph.edges[e - 1][0]], labels[graph.edges[e - 1][1]]) for e in pending if e != pending[k]),
        )
        u, v = graph.edges[pending[k] - 1][:2]
        return comps[labels[u]] != comps[labels[v]]

    def recurse(labels: list[int], pending: list[int], chosen: list[int], size: int) -> None:
        # labels: current contracted vertex of every original vertex, relabelled 0..size-1
        if size == 1:
            trees.append(frozenset(chosen))
            return
        if not pending:
            return
        e = pending[0]
        u, v = (labels[x] for x in graph.edges[e - 1][:2])
        rest = pending[1:]
        if u == v:
            recurse(labels, rest, chosen, size)
            return
        # contract e
        merged = [v if x == u else x for x in labels]
        order = {x: i for i, x in enumerate(sorted(set(merged)))}
        recurse([order[x] for x in merged], rest, chosen + [e], size - 1)
        # delete e unless it is a bridge of what remains
        if not bridge_like(labels, pending, 0):
            recurse(labels, rest, chosen, size)

    recurse(list(range(graph.vertex_count)), list(range(1, graph.n + 1)), [], graph.vertex_count)
    return sorted(trees, key=sorted)


def laplacian(graph: TaitGraph) -> list[list[int]]:
    m = [[0] * graph.vertex_count for _ in range(graph.vertex_count)]
    for u, v, _ in graph.edges:
        if u == v:
            continue
        m[u][u] += 1
        m[v][v] += 1
        m[u][v] -= 1
        m[v][u] -= 1
    return m


def bareiss_determinant(matrix: list[list[int]]) -> int:
    """Exact integer determinant by fraction-free elimination."""
    a = [row[:] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if a[r][k] != 0), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def count_spanning_trees_matrix_tree(graph: TaitGraph) -> int:
    """Any cofactor of the Laplacian (row/column 0 deleted)."""
    lap = laplacian(graph)
    return bareiss_determinant([row[1:] for row in lap[1:]])


def fundamental_cut(graph: TaitGraph, tree: frozenset[int], edge: int) -> frozenset[int]:
    """Edges joining the two sides of ``tree - edge`` (``edge`` itself included)."""
    rest = [graph.edges[e - 1][:2] for e in tree if e != edge]
    comp = _components(graph.vertex_count, rest)
    return frozenset(
        k for k, (u, v, _) in enumerate(graph.edges, 1) if comp[u] != comp[v]
    )


def fundamental_cycle(graph: TaitGraph, tree: frozenset[int], edge: int) -> frozenset[int]:
    """Edges of the unique cycle in ``tree + edge`` (``edge`` itself included)."""
    u, v, _ = graph.edges[edge - 1]
    if u == v:
        return frozenset({edge})
    adj: dict[int, list[tuple[int, int]]] = {}
    for e in tree:
        a, b, _ = graph.edges[e - 1]
        adj.setdefault(a, []).append((b, e))
        adj.setdefault(b, []).append((a, e))
    back: dict[int, tuple[int, int] | None] = {u: None}
    stack = [u]
    while stack:
        x = stack.pop()
        for y, e in adj.get(x, ()):
            if y not in back:
                back[y] = (x, e)
                stack.append(y)
    path = {edge}
    x = v
    while back[x] is not None:
        x, e = back[x]
        path.add(e)
    return frozenset(path)


def tree_activities(graph: TaitGraph, tree: Iterable[int]) -> ActivityWord:
    """Tutte activities: a tree edge is live when it is the lowest edge of its
    fundamental cut; a non-tree edge when it is the lowest of its fundamental cycle."""
    tree = frozenset(tree)
    live = []
    for e in range(1, graph.n + 1):
        others = fundamental_cut(graph, tree, e) if e in tree else fundamental_cycle(graph, tree, e)
        live.append(min(others) == e)
    return ActivityWord(
        tuple(live),
        tuple(e in tree for e in range(1, graph.n + 1)),
        tuple(s < 0 for _, _, s in graph.edges),
    )


def tree_grading(graph: TaitGraph, tree: Iterable[int]) -> tuple[int, int]:
    """``(u, v)`` with ``u = #L - #l - #L' + #l'`` and ``v`` the number of positive tree edges."""
    tree = frozenset(tree)
    word = tree_activities(graph, tree)
    u = 0
    for live, member, neg in zip(word.live, word.member, word.negative):
        if live:
            u += (1 if member else -1) * (-1 if neg else 1)
    v = sum(1 for e in tree if graph.sign(e) > 0)
    return u, v
