"""Quasi-trees of a ribbon graph, their ordered chord diagrams and bigradings.

A quasi-tree is a spanning subgraph with a single face.  Walking that face
gives an ordered chord diagram on the marks ``1..2n``; chord ``i`` joins
``2i - 1`` and ``2i``, and chords are ordered by their index.  The walk is
taken in the direction induced by ``sigma0``; reversing it would reverse every
cyclic order without changing which chords interleave.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple

from ribbonkh.activity import ActivityWord
from ribbonkh.linkdiag import TaitGraph
from ribbonkh.ribbon import RibbonGraph, edges_to_mask, mask_to_edges
from ribbonkh.treemodel import is_spanning_tree

DEFAULT_MAX_EDGES = 16


class QuasiTreeError(ValueError):
    pass


class Bigrading(NamedTuple):
    u: int
    v: int


@dataclass(frozen=True)
class QuasiTree:
    edges: frozenset[int]
    genus: int

    @property
    def mask(self) -> int:
        return edges_to_mask(self.edges)

    @classmethod
    def of(cls, rg: RibbonGraph, edges: Iterable[int]) -> QuasiTree:
        edges = frozenset(edges)
        if rg.faces_of_mask(edges_to_mask(edges)) != 1:
            raise QuasiTreeError(f"edges {sorted(edges)} do not form a quasi-tree")
        return cls(edges, (1 - rg.vertex_count + len(edges)) // 2)


def _scan(rg: RibbonGraph, lo: int, hi: int, sizes: frozenset[int]) -> list[int]:
    found = []
    for mask in range(lo, hi):
        if mask.bit_count() in sizes and rg.faces_of_mask(mask) == 1:
            found.append(mask)
    return found


def enumerate_quasitrees(
    rg: RibbonGraph, max_edges: int = DEFAULT_MAX_EDGES, jobs: int = 1
) -> list[QuasiTree]:
    """All quasi-trees, ordered by their edge masks read as binary numbers.

    Only subset sizes allowed by Euler's formula are examined:
    ``|Q| = V - 1 + 2j`` with ``0 <= j <= g``.
    """
    if rg.n > max_edges:
        raise QuasiTreeError(f"{rg.n} edges exceeds the enumeration bound {max_edges}")
    v, g = rg.vertex_count, rg.genus
    sizes = frozenset(v - 1 + 2 * j for j in range(g + 1))
    total = 1 << rg.n
    if jobs > 1 and total >= 1 << 12:
        step = -(-total // (4 * jobs))
        bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        with ProcessPoolExecutor(jobs) as pool:
            parts = pool.map(_scan, [rg] * len(bounds), *zip(*bounds), [sizes] * len(bounds))
            masks = [m for part in parts for m in part]
    else:
        masks = _scan(rg, 0, total, sizes)
    return [QuasiTree(mask_to_edges(m), (m.bit_count() - v + 1) // 2) for m in masks]


@dataclass(frozen=True)
class ChordDiagram:
    """Marks in the order met along the single face of a quasi-tree."""

    cyclic_order: tuple[int, ...]
    in_quasitree: tuple[bool, ...]

    @property
    def n(self) -> int:
        return len(self.in_quasitree)

    @cached_property
    def positions(self) -> tuple[int, ...]:
        pos = [0] * (len(self.cyclic_order) + 1)
        for idx, m in enumerate(self.cyclic_order):
            pos[m] = idx
        return tuple(pos)

    def interleave(self, i: int, j: int) -> bool:
        """Whether chords ``i`` and ``j`` (1-based) cross."""
        pos = self.positions
        a, b = sorted((pos[2 * i - 1], pos[2 * i]))
        c, d = pos[2 * j - 1], pos[2 * j]
        return (a < c < b) != (a < d < b)

    @cached_property
    def live(self) -> tuple[bool, ...]:
        return liveness(self)

    def activity_word(self) -> ActivityWord:
        return ActivityWord(self.live, self.in_quasitree)

    def to_json(self) -> dict:
        return {
            "cyclic_order": list(self.cyclic_order),
            "in_quasitree": [i for i in range(1, self.n + 1) if self.in_quasitree[i - 1]],
            "live": [i for i in range(1, self.n + 1) if self.live[i - 1]],
        }


def chord_diagram(rg: RibbonGraph, q: QuasiTree) -> ChordDiagram:
    walk = rg.face_walk(q.mask)
    order = [1]
    m = walk[1]
    while m != 1:
        order.append(m)
        m = walk[m]
    if len(order) != 2 * rg.n:
        raise QuasiTreeError(f"boundary walk has more than one orbit for edges {sorted(q.edges)}")
    return ChordDiagram(tuple(order), tuple(i in q.edges for i in range(1, rg.n + 1)))


def liveness(chords: ChordDiagram) -> tuple[bool, ...]:
    """A chord is live when it crosses no lower-numbered chord."""
    return tuple(
        not any(chords.interleave(i, j) for i in range(1, j)) for j in range(1, chords.n + 1)
    )


def interlacement_rows(chords: ChordDiagram, subset: Iterable[int]) -> list[int]:
    """Bit rows of the interlacement matrix restricted to ``subset``."""
    sub = sorted(subset)
    return [
        sum(1 << b for b, j in enumerate(sub) if chords.interleave(i, j)) for i in sub
    ]


def gf2_rank(rows: list[int]) -> int:
    rows = [r for r in rows if r]
    rank = 0
    while rows:
        pivot = rows.pop()
        low = pivot & -pivot
        rows = [r ^ pivot if r & low else r for r in rows]
        rows = [r for r in rows if r]
        rank += 1
    return rank


def genus_from_chords(chords: ChordDiagram) -> int:
    """Half the GF(2) rank of the interlacement matrix of the quasi-tree's chords."""
    members = [i for i in range(1, chords.n + 1) if chords.in_quasitree[i - 1]]
    rank = gf2_rank(interlacement_rows(chords, members))
    if rank % 2:
        raise QuasiTreeError("odd interlacement rank")
    return rank // 2


def grading(rg: RibbonGraph, q: QuasiTree, chords: ChordDiagram | None = None) -> Bigrading:
    chords = chords or chord_diagram(rg, q)
    u = sum(
        (-1 if member else 1) for live, member in zip(chords.live, chords.in_quasitree) if live
    )
    return Bigrading(u, -q.genus)


def tait_constant(rg: RibbonGraph, graph: TaitGraph) -> int:
    """``(V(G) + E+(G) - V(RG)) / 2``, the value of ``v(T) + g(Q)`` on every pair."""
    twice = graph.vertex_count + graph.positive_count - rg.vertex_count
    if twice % 2:
        raise QuasiTreeError("Tait graph and ribbon graph have incompatible parity")
    return twice // 2


def quasitree_to_tree(rg: RibbonGraph, q: QuasiTree, graph: TaitGraph) -> frozenset[int]:
    """Positive edges outside ``q`` together with negative edges inside ``q``."""
    if graph.n != rg.n:
        raise QuasiTreeError("Tait graph and ribbon graph have different edge counts")
    tree = frozenset(
        e for e in range(1, graph.n + 1) if (graph.sign(e) > 0) != (e in q.edges)
    )
    if not is_spanning_tree(graph, tree):
        raise QuasiTreeError(f"quasi-tree {sorted(q.edges)} maps to non-tree {sorted(tree)}")
    v_tree = sum(1 for e in tree if graph.sign(e) > 0)
    if v_tree + q.genus != tait_constant(rg, graph):
        raise QuasiTreeError("v(T) + g(Q) differs from (V(G) + E+ - V(RG)) / 2")
    return tree


def tree_to_quasitree(graph: TaitGraph, tree: Iterable[int], rg: RibbonGraph) -> QuasiTree:
    tree = frozenset(tree)
    edges = frozenset(e for e in range(1, graph.n + 1) if (graph.sign(e) > 0) != (e in tree))
    return QuasiTree.of(rg, edges)


def thickness(gradings: Iterable[Bigrading]) -> int:
    """Number of distinct ``v`` values."""
    return len({g.v for g in gradings})


def generating_polynomial(gradings: Iterable[Bigrading]) -> dict[tuple[int, int], int]:
    """Multiplicities of ``x^u y^v``."""
    out: dict[tuple[int, int], int] = {}
    for g in gradings:
        out[(g.u, g.v)] = out.get((g.u, g.v), 0) + 1
    return dict(sorted(out.items()))
