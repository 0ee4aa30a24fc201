"""Link diagrams in PD notation, Kauffman states and checkerboard (Tait) graphs.

A crossing ``X(a, b, c, d)`` lists its four arc labels counterclockwise,
starting from the incoming under-strand.  Positions inside a crossing are
numbered 0..3 in that order; an *end* is a pair ``(crossing, position)`` and is
encoded as the integer ``4 * crossing + position``.

With this layout the A-smoothing joins positions (0, 1) and (2, 3) and the
B-smoothing joins (0, 3) and (1, 2).  The corner between positions ``p`` and
``p + 1`` is an A-region exactly when ``p`` is odd.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

A_PAIRS = ((0, 1), (2, 3))
B_PAIRS = ((0, 3), (1, 2))

_TERM = re.compile(r"X\s*[\(\[]\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*[\)\]]")


class DiagramError(ValueError):
    """Raised for malformed or unsupported link diagrams."""


class _UnionFind:
    __slots__ = ("parent",)

    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        self.parent[rx] = ry
        return True


@dataclass(frozen=True)
class State:
    """A choice of smoothing ``'A'`` or ``'B'`` at every crossing (crossing 1 first)."""

    assignment: tuple[str, ...]

    def __post_init__(self):
        if any(x not in ("A", "B") for x in self.assignment):
            raise ValueError(f"state letters must be 'A' or 'B': {self.assignment!r}")

    @classmethod
    def all_a(cls, n: int) -> State:
        return cls(("A",) * n)

    @classmethod
    def all_b(cls, n: int) -> State:
        return cls(("B",) * n)

    @classmethod
    def from_b_edges(cls, n: int, edges: Iterable[int]) -> State:
        """State with B exactly on the given 1-based crossings."""
        b = set(edges)
        return cls(tuple("B" if i in b else "A" for i in range(1, n + 1)))

    @property
    def b_mask(self) -> int:
        return sum(1 << k for k, x in enumerate(self.assignment) if x == "B")

    def __len__(self) -> int:
        return len(self.assignment)


@dataclass(frozen=True)
class TaitGraph:
    """Signed checkerboard graph; edge ``k`` (1-based) comes from crossing ``k``.

    ``edges[k - 1] = (u, v, sign)`` with vertices numbered from 0.
    """

    vertex_count: int
    edges: tuple[tuple[int, int, int], ...]

    @property
    def n(self) -> int:
        return len(self.edges)

    @property
    def positive_count(self) -> int:
        return sum(1 for _, _, s in self.edges if s > 0)

    @property
    def negative_count(self) -> int:
        return sum(1 for _, _, s in self.edges if s < 0)

    def sign(self, edge: int) -> int:
        return self.edges[edge - 1][2]

    def positive_edges(self) -> frozenset[int]:
        return frozenset(k for k, (_, _, s) in enumerate(self.edges, 1) if s > 0)

    def negative_edges(self) -> frozenset[int]:
        return frozenset(k for k, (_, _, s) in enumerate(self.edges, 1) if s < 0)


@dataclass(frozen=True)
class LinkDiagram:
    """An ordered list of PD crossings together with derived orientation data."""

    crossings: tuple[tuple[int, int, int, int], ...]
    require_connected: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self):
        crossings = tuple(tuple(int(x) for x in c) for c in self.crossings)
        object.__setattr__(self, "crossings", crossings)
        if not crossings:
            raise DiagramError("empty crossing list")
        if any(len(c) != 4 for c in crossings):
            raise DiagramError("every crossing needs exactly four arc labels")
        counts: dict[int, int] = {}
        for c in crossings:
            for label in c:
                counts[label] = counts.get(label, 0) + 1
        bad = sorted(label for label, k in counts.items() if k != 2)
        if bad:
            raise DiagramError(f"arc labels must appear exactly twice; offending: {bad}")
        if self.require_connected and self.diagram_component_count != 1:
            raise DiagramError("diagram is disconnected")
        # Force orientation and planarity checks at construction time.
        self.signs
        self.faces

    @property
    def n(self) -> int:
        return len(self.crossings)

    def __len__(self) -> int:
        return len(self.crossings)

    def pd_string(self) -> str:
        return " ".join("X(%d,%d,%d,%d)" % c for c in self.crossings)

    @cached_property
    def partner(self) -> tuple[int, ...]:
        """``partner[e]`` is the other end of the arc leaving end ``e``."""
        first: dict[int, int] = {}
        partner = [0] * (4 * self.n)
        for e in range(4 * self.n):
            label = self.crossings[e // 4][e % 4]
            if label in first:
                partner[e] = first[label]
                partner[first[label]] = e
            else:
                first[label] = e
        return tuple(partner)

    @cached_property
    def diagram_component_count(self) -> int:
        uf = _UnionFind(self.n)
        comps = self.n
        for e, f in enumerate(self.partner):
            if uf.union(e // 4, f // 4):
                comps -= 1
        return comps

    @cached_property
    def outgoing(self) -> tuple[bool, ...]:
        """For every end, whether the oriented strand leaves the crossing there.

        Under-strands are oriented by the PD convention (in at 0, out at 2);
        over-strands inherit orientation along arcs.  Components that only
        pass over fall back to label succession.
        """
        size = 4 * self.n
        out: list[bool | None] = [None] * size
        partner = self.partner
        stack: list[int] = []

        def assign(e: int, value: bool) -> None:
            if out[e] is None:
                out[e] = value
                stack.append(e)
            elif out[e] != value:
                raise DiagramError("inconsistent strand orientation (malformed PD code)")

        def propagate() -> None:
            while stack:
                e = stack.pop()
                assign(partner[e], not out[e])
                assign(4 * (e // 4) + (e % 4 + 2) % 4, not out[e])

        for k in range(self.n):
            assign(4 * k, False)
            assign(4 * k + 2, True)
        propagate()
        for k, c in enumerate(self.crossings):
            if out[4 * k + 1] is None:
                # over strand b--d: leave towards the label that follows the other
                b, d = c[1], c[3]
                assign(4 * k + 3, b < d)
                propagate()
        return tuple(bool(x) for x in out)

    @cached_property
    def signs(self) -> tuple[int, ...]:
        """Right-hand-rule crossing signs.

        With the under-strand running from position 0 to 2, the crossing is
        positive when the over-strand runs from position 3 to position 1.
        """
        return tuple(1 if self.outgoing[4 * k + 1] else -1 for k in range(self.n))

    @cached_property
    def component_count(self) -> int:
        uf = _UnionFind(4 * self.n)
        comps = 4 * self.n
        for e, f in enumerate(self.partner):
            if uf.union(e, f):
                comps -= 1
        for k in range(self.n):
            for p in (0, 1):
                if uf.union(4 * k + p, 4 * k + p + 2):
                    comps -= 1
        return comps

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Faces of the underlying 4-valent plane graph as cycles of corners.

        Corner ``4k + p`` is the region between positions ``p`` and ``p + 1``
        of crossing ``k``.
        """
        size = 4 * self.n
        nxt = [self.partner[4 * (c // 4) + (c % 4 + 1) % 4] for c in range(size)]
        seen = [False] * size
        faces = []
        for c in range(size):
            if seen[c]:
                continue
            cycle = []
            while not seen[c]:
                seen[c] = True
                cycle.append(c)
                c = nxt[c]
            faces.append(tuple(cycle))
        if self.diagram_component_count == 1 and len(faces) != self.n + 2:
            raise DiagramError(
                f"non-planar gluing: {len(faces)} faces for {self.n} crossings (expected {self.n + 2})"
            )
        return tuple(faces)

    @cached_property
    def corner_color(self) -> tuple[int, ...]:
        """A proper 2-colouring of the faces, recorded per corner."""
        face_of = {}
        for f, cycle in enumerate(self.faces):
            for c in cycle:
                face_of[c] = f
        color: dict[int, int] = {}
        for start in range(len(self.faces)):
            if start in color:
                continue
            color[start] = 0
            stack = [start]
            while stack:
                f = stack.pop()
                for c in self.faces[f]:
                    k, p = divmod(c, 4)
                    for q in ((p + 1) % 4, (p + 3) % 4):
                        g = face_of[4 * k + q]
                        want = 1 - color[f]
                        if g not in color:
                            color[g] = want
                            stack.append(g)
                        elif color[g] != want:
                            raise DiagramError("faces are not 2-colourable (malformed PD code)")
        return tuple(color[face_of[c]] for c in range(4 * self.n))


def parse_pd(text: str, require_connected: bool = True) -> LinkDiagram:
    """Parse whitespace separated ``X(a,b,c,d)`` terms; ``#`` starts a comment line."""
    lines = [ln for ln in text.splitlines() if not ln.lstrip().startswith("#")]
    body = "\n".join(lines)
    crossings = []
    pos = 0
    for m in _TERM.finditer(body):
        _check_filler(body[pos:m.start()])
        crossings.append(tuple(int(g) for g in m.groups()))
        pos = m.end()
    _check_filler(body[pos:])
    if not crossings:
        raise DiagramError("empty crossing list")
    return LinkDiagram(tuple(crossings), require_connected=require_connected)


def _check_filler(chunk: str) -> None:
    rest = re.sub(r"PD\s*[\(\[]|[\)\]]|[\s,]", "", chunk)
    if rest:
        raise DiagramError(f"malformed PD syntax near {chunk.strip()[:30]!r}")


def smoothing_circle_count(diagram: LinkDiagram, state: State) -> int:
    """Number of circles after smoothing every crossing according to ``state``."""
    if len(state) != diagram.n:
        raise ValueError("state does not cover every crossing")
    return circle_count_mask(diagram, state.b_mask)


def circle_count_mask(diagram: LinkDiagram, b_mask: int) -> int:
    """Circle count of the state with B-smoothings at the set bits of ``b_mask``."""
    size = 4 * diagram.n
    uf = _UnionFind(size)
    comps = size
    for e, f in enumerate(diagram.partner):
        if e < f and uf.union(e, f):
            comps -= 1
    for k in range(diagram.n):
        pairs = B_PAIRS if b_mask >> k & 1 else A_PAIRS
        for p, q in pairs:
            if uf.union(4 * k + p, 4 * k + q):
                comps -= 1
    return comps


def state_circles(diagram: LinkDiagram, b_mask: int = 0) -> list[list[int]]:
    """Circles of a state, each as the cyclic list of ends it passes through.

    Each circle alternates arc steps (end to partner) and smoothing steps
    (end to its smoothing mate at the same crossing).
    """
    size = 4 * diagram.n
    mate = [0] * size
    for k in range(diagram.n):
        for p, q in B_PAIRS if b_mask >> k & 1 else A_PAIRS:
            mate[4 * k + p], mate[4 * k + q] = 4 * k + q, 4 * k + p
    seen = [False] * size
    circles = []
    for start in range(size):
        if seen[start]:
            continue
        circle = []
        e = start
        while not seen[e]:
            f = mate[e]
            seen[e] = seen[f] = True
            circle.extend((e, f))
            e = diagram.partner[f]
        circles.append(circle)
    return circles


def writhe(diagram: LinkDiagram) -> int:
    return sum(diagram.signs)


def c_plus(diagram: LinkDiagram) -> int:
    return sum(1 for s in diagram.signs if s > 0)


def c_minus(diagram: LinkDiagram) -> int:
    return diagram.n - c_plus(diagram)


def checkerboard_graphs(diagram: LinkDiagram) -> tuple[TaitGraph, TaitGraph]:
    """The two signed checkerboard graphs, shading colour 0 first."""
    color = diagram.corner_color
    graphs = []
    for shade in (0, 1):
        ids: dict[int, int] = {}
        face_id = {}
        for f, cycle in enumerate(diagram.faces):
            for c in cycle:
                face_id[c] = f
        edges = []
        for k in range(diagram.n):
            shaded = [p for p in range(4) if color[4 * k + p] == shade]
            u, v = (ids.setdefault(face_id[4 * k + p], len(ids)) for p in shaded)
            # shaded corners are odd exactly when the A-smoothing joins them
            edges.append((u, v, 1 if shaded[0] % 2 else -1))
        graphs.append(TaitGraph(len(ids), tuple(edges)))
    return graphs[0], graphs[1]


def tait_graph(diagram: LinkDiagram, alternate: bool = False) -> TaitGraph:
    """Signed Tait graph with ``E+ >= E-``.

    Ties go to the shading with fewer vertices, then to the shading in which
    crossing 1 gives a positive edge.  ``alternate=True`` returns the other
    shading instead.
    """
    g0, g1 = checkerboard_graphs(diagram)

    def key(g: TaitGraph):
        return (-(g.positive_count - g.negative_count), g.vertex_count, -g.sign(1))

    first, second = sorted((g0, g1), key=key)
    return second if alternate else first


def mirror(diagram: LinkDiagram) -> LinkDiagram:
    """Switch every crossing (keeps arc labels and orientation)."""
    out = []
    for k, (a, b, c, d) in enumerate(diagram.crossings):
        if diagram.outgoing[4 * k + 1]:
            out.append((d, a, b, c))
        else:
            out.append((b, c, d, a))
    return LinkDiagram(tuple(out), require_connected=diagram.require_connected)


def reorder(diagram: LinkDiagram, order: Sequence[int]) -> LinkDiagram:
    """Diagram whose ``i``-th crossing is crossing ``order[i]`` (0-based) of the input."""
    if sorted(order) != list(range(diagram.n)):
        raise ValueError("order must be a permutation of the crossing indices")
    return LinkDiagram(
        tuple(diagram.crossings[k] for k in order), require_connected=diagram.require_connected
    )


def disjoint_union(first: LinkDiagram, second: LinkDiagram) -> LinkDiagram:
    """Split union; the result is only usable by the link-capable bracket path."""
    shift = max(max(c) for c in first.crossings)
    moved = tuple(tuple(x + shift for x in c) for c in second.crossings)
    return LinkDiagram(first.crossings + moved, require_connected=False)
