"""Oriented ribbon graphs encoded by permutations of half-edges ``1..2n``.

``sigma0`` rotates half-edges around vertices, ``sigma1`` pairs the half-edges
``2i - 1, 2i`` of edge ``i`` and ``sigma2 = sigma1 o sigma0^-1`` (apply
``sigma0^-1`` first) walks the faces.  Permutations are tuples indexed
``1..2n`` with an unused slot 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from ribbonkh.linkdiag import A_PAIRS, DiagramError, LinkDiagram, state_circles

Perm = tuple[int, ...]


class RibbonGraphError(ValueError):
    pass


def edge_of(mark: int) -> int:
    return (mark + 1) // 2


def pair_involution(n: int) -> Perm:
    p = [0] * (2 * n + 1)
    for i in range(1, n + 1):
        p[2 * i - 1], p[2 * i] = 2 * i, 2 * i - 1
    return tuple(p)


def invert(p: Perm) -> Perm:
    inv = [0] * len(p)
    for i in range(1, len(p)):
        inv[p[i]] = i
    return tuple(inv)


def compose(f: Perm, g: Perm) -> Perm:
    """``f o g``: apply ``g`` first."""
    return (0,) + tuple(f[g[i]] for i in range(1, len(g)))


def cycles(p: Perm) -> list[tuple[int, ...]]:
    seen = [False] * len(p)
    out = []
    for i in range(1, len(p)):
        if seen[i]:
            continue
        cyc = []
        while not seen[i]:
            seen[i] = True
            cyc.append(i)
            i = p[i]
        out.append(tuple(cyc))
    return out


def count_orbits(p: Sequence[int]) -> int:
    seen = bytearray(len(p))
    count = 0
    for i in range(1, len(p)):
        if seen[i]:
            continue
        count += 1
        while not seen[i]:
            seen[i] = 1
            i = p[i]
    return count


def format_cycles(p: Perm, compact: bool = False) -> str:
    """Cycle notation including fixed points, e.g. ``(1 5 7 2 4 8 6 3)``."""
    sep = "" if compact and len(p) <= 10 else " "
    return "".join("(" + sep.join(map(str, c)) + ")" for c in cycles(p))


def parse_cycles(text: str, size: int | None = None) -> Perm:
    """Parse cycle notation; single-digit cycles may omit separators (``(15724863)``).

    Omitted points are fixed.  ``size`` is the number of points ``2n``; by
    default the largest mark mentioned (rounded up to even).
    """
    groups = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)|\s", "", text):
        raise RibbonGraphError(f"malformed cycle notation: {text!r}")
    cyc_lists = []
    for g in groups:
        g = g.strip()
        if not g:
            continue
        if re.fullmatch(r"\d+", g):
            items = [int(ch) for ch in g]
        else:
            items = [int(x) for x in re.split(r"[\s,]+", g) if x]
        cyc_lists.append(items)
    top = max((max(c) for c in cyc_lists), default=0)
    if size is None:
        size = top + (top % 2)
    if top > size or any(x < 1 for c in cyc_lists for x in c):
        raise RibbonGraphError(f"marks must lie in 1..{size}")
    p = list(range(size + 1))
    seen = set()
    for c in cyc_lists:
        for i, x in enumerate(c):
            if x in seen:
                raise RibbonGraphError(f"mark {x} repeated in cycle notation")
            seen.add(x)
            p[x] = c[(i + 1) % len(c)]
    return tuple(p)


@dataclass(frozen=True)
class RibbonGraph:
    sigma0: Perm
    sigma1: Perm
    sigma2: Perm

    def __post_init__(self):
        for name in ("sigma0", "sigma1", "sigma2"):
            p = tuple(getattr(self, name))
            if p and p[0] != 0:
                p = (0,) + p
            object.__setattr__(self, name, p)
            if len(p) % 2 != 1 or len(p) < 3 or sorted(p[1:]) != list(range(1, len(p))):
                raise RibbonGraphError(f"{name} is not a permutation of 1..2n")
        if not len(self.sigma0) == len(self.sigma1) == len(self.sigma2):
            raise RibbonGraphError("permutations act on different sets")

    @classmethod
    def from_sigma0(cls, sigma0: Sequence[int]) -> RibbonGraph:
        sigma0 = tuple(sigma0)
        if sigma0 and sigma0[0] != 0:
            sigma0 = (0,) + sigma0
        if len(sigma0) % 2 != 1 or sorted(sigma0[1:]) != list(range(1, len(sigma0))):
            raise RibbonGraphError("sigma0 must be a permutation of 1..2n")
        s1 = pair_involution((len(sigma0) - 1) // 2)
        return cls(sigma0, s1, compose(s1, invert(sigma0)))

    def problems(self) -> list[str]:
        """Violated structural invariants, each with the offending orbit."""
        out = []
        s1 = pair_involution(self.n)
        if self.sigma1 != s1:
            bad = next(i for i in range(1, len(s1)) if self.sigma1[i] != s1[i])
            out.append(f"sigma1 is not prod (2i-1, 2i): mark {bad} maps to {self.sigma1[bad]}")
        want = compose(self.sigma1, invert(self.sigma0))
        if self.sigma2 != want:
            wrong = [c for c in cycles(self.sigma2) if c not in cycles(want)]
            out.append(
                "sigma2 != sigma1 o sigma0^-1: failing orbit(s) "
                + " ".join("(" + " ".join(map(str, c)) + ")" for c in wrong)
                + f"; expected {format_cycles(want)}"
            )
        if (self.vertex_count + self.face_count - self.edge_count) % 2:
            out.append("Euler characteristic V - E + F is odd")
        return out

    @property
    def n(self) -> int:
        return (len(self.sigma0) - 1) // 2

    @cached_property
    def sigma2_inverse(self) -> Perm:
        return invert(self.sigma2)

    @cached_property
    def vertex_count(self) -> int:
        return count_orbits(self.sigma0)

    @cached_property
    def edge_count(self) -> int:
        return count_orbits(self.sigma1)

    @cached_property
    def face_count(self) -> int:
        return count_orbits(self.sigma2)

    @cached_property
    def is_connected(self) -> bool:
        uf = list(range(len(self.sigma0)))

        def find(x):
            while uf[x] != x:
                uf[x] = uf[uf[x]]
                x = uf[x]
            return x

        comps = len(self.sigma0) - 1
        for p in (self.sigma0, self.sigma1):
            for i in range(1, len(p)):
                a, b = find(i), find(p[i])
                if a != b:
                    uf[a] = b
                    comps -= 1
        return comps == 1

    @cached_property
    def genus(self) -> int:
        if not self.is_connected:
            raise RibbonGraphError("genus is only defined for connected ribbon graphs")
        twice = 2 - self.vertex_count + self.edge_count - self.face_count
        if twice % 2 or twice < 0:
            raise RibbonGraphError(f"non-integral genus {twice}/2: corrupted permutations")
        return twice // 2

    def face_walk(self, edge_mask: int) -> list[int]:
        """The permutation sending ``i`` to ``sigma2^-1(i)`` on edges in the mask, else ``sigma0(i)``."""
        s0, s2i = self.sigma0, self.sigma2_inverse
        walk = [0] * len(s0)
        for i in range(1, len(s0)):
            walk[i] = s2i[i] if edge_mask >> ((i - 1) >> 1) & 1 else s0[i]
        return walk

    def faces_of_mask(self, edge_mask: int) -> int:
        return count_orbits(self.face_walk(edge_mask))

    def relabel(self, mapping: Sequence[int]) -> RibbonGraph:
        """Conjugate by a relabelling ``i -> mapping[i]`` that commutes with ``sigma1``."""
        m = tuple(mapping)
        if m[0] != 0:
            m = (0,) + m
        mi = invert(m)
        conj = lambda p: compose(m, compose(p, mi))  # noqa: E731
        if conj(self.sigma1) != self.sigma1:
            raise RibbonGraphError("relabelling does not preserve the edge pairing")
        return RibbonGraph(conj(self.sigma0), self.sigma1, conj(self.sigma2))

    def swap_marks(self, edges: Iterable[int]) -> RibbonGraph:
        """Exchange the labels ``2i - 1`` and ``2i`` for every edge ``i`` given."""
        m = list(range(2 * self.n + 1))
        for i in edges:
            m[2 * i - 1], m[2 * i] = 2 * i, 2 * i - 1
        return self.relabel(m)


@dataclass(frozen=True)
class SpanningSubgraph:
    parent: RibbonGraph
    edges: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        if any(not 1 <= e <= self.parent.n for e in self.edges):
            raise RibbonGraphError(f"edges must lie in 1..{self.parent.n}")

    @property
    def mask(self) -> int:
        return edges_to_mask(self.edges)


def edges_to_mask(edges: Iterable[int]) -> int:
    return sum(1 << (e - 1) for e in set(edges))


def mask_to_edges(mask: int) -> frozenset[int]:
    return frozenset(k + 1 for k in range(mask.bit_length()) if mask >> k & 1)


def vertex_count(rg: RibbonGraph) -> int:
    return rg.vertex_count


def edge_count(rg: RibbonGraph) -> int:
    return rg.edge_count


def face_count(rg: RibbonGraph) -> int:
    return rg.face_count


def genus(rg: RibbonGraph) -> int:
    return rg.genus


def face_count_of_subgraph(rg: RibbonGraph, subgraph: SpanningSubgraph | Iterable[int]) -> int:
    """Faces of the spanning subgraph keeping only the given edges (1-based)."""
    if isinstance(subgraph, SpanningSubgraph):
        if subgraph.parent != rg:
            raise RibbonGraphError("subgraph belongs to a different ribbon graph")
        return rg.faces_of_mask(subgraph.mask)
    edges = set(subgraph)
    if any(not 1 <= e <= rg.n for e in edges):
        raise RibbonGraphError(f"edges must lie in 1..{rg.n}")
    return rg.faces_of_mask(edges_to_mask(edges))


def from_diagram(diagram: LinkDiagram, swap: Iterable[int] = ()) -> RibbonGraph:
    """All-A ribbon graph of a connected diagram.

    At crossing ``i`` the A-smoothing leaves two sites: the turn through
    positions (0, 1), which carries mark ``2i - 1``, and the turn through
    (2, 3), which carries ``2i`` (reversed for crossings listed in ``swap``).
    Circles are oriented so that re-smoothing any crossing to B continues the
    boundary coherently; crossing 1's first site is read from position 0 to 1.
    """
    if diagram.diagram_component_count != 1:
        raise DiagramError("all-A ribbon graph needs a connected diagram")
    swapped = set(swap)
    circles = state_circles(diagram, 0)
    # site key: (crossing, 0 for the (0,1) turn, 1 for the (2,3) turn)
    site_circle: dict[tuple[int, int], int] = {}
    site_forward: dict[tuple[int, int], bool] = {}
    for ci, circle in enumerate(circles):
        for j in range(0, len(circle), 2):
            e, f = circle[j], circle[j + 1]
            k, p = divmod(e, 4)
            site = (k, 0 if {p, f % 4} == set(A_PAIRS[0]) else 1)
            site_circle[site] = ci
            site_forward[site] = p % 2 == 0

    flip: list[bool | None] = [None] * len(circles)
    adjacency: list[list[tuple[int, bool]]] = [[] for _ in circles]
    for k in range(diagram.n):
        a, b = (k, 0), (k, 1)
        ca, cb = site_circle[a], site_circle[b]
        # need  forward(a) ^ flip[ca] == forward(b) ^ flip[cb]
        rel = site_forward[a] != site_forward[b]
        adjacency[ca].append((cb, rel))
        adjacency[cb].append((ca, rel))
    first = site_circle[(0, 0)]
    flip[first] = not site_forward[(0, 0)]
    stack = [first]
    while stack:
        c = stack.pop()
        for d, rel in adjacency[c]:
            want = flip[c] != rel
            if flip[d] is None:
                flip[d] = want
                stack.append(d)
            elif flip[d] != want:
                raise DiagramError("no coherent orientation of the all-A circles")

    def mark(site: tuple[int, int]) -> int:
        k, s = site
        if k + 1 in swapped:
            s = 1 - s
        return 2 * k + 1 + s

    sigma0 = [0] * (2 * diagram.n + 1)
    for ci, circle in enumerate(circles):
        marks = []
        for j in range(0, len(circle), 2):
            k, p = divmod(circle[j], 4)
            f = circle[j + 1] % 4
            marks.append(mark((k, 0 if {p, f} == set(A_PAIRS[0]) else 1)))
        if flip[ci]:
            marks.reverse()
        for j, m in enumerate(marks):
            sigma0[m] = marks[(j + 1) % len(marks)]
    return RibbonGraph.from_sigma0(tuple(sigma0))


def parse_permutation_file(text: str) -> dict[str, Perm]:
    """Read ``sigma0 = (...)`` lines (optionally ``sigma1``/``sigma2``); ``#`` comments."""
    found: dict[str, str] = {}
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = re.fullmatch(r"(sigma[012]|σ[₀₁₂])\s*=\s*(.*)", line)
        if not m:
            raise RibbonGraphError(f"unrecognised line in permutation file: {raw!r}")
        key = m.group(1)
        if key.startswith("σ"):
            key = "sigma" + str("₀₁₂".index(key[1]))
        found[key] = m.group(2)
    if "sigma0" not in found:
        raise RibbonGraphError("permutation file lacks a sigma0 line")
    s0 = parse_cycles(found["sigma0"])
    out = {"sigma0": s0}
    for key in ("sigma1", "sigma2"):
        if key in found:
            out[key] = parse_cycles(found[key], size=len(s0) - 1)
    return out


def ribbon_from_permutation_file(text: str) -> RibbonGraph:
    """Build the ribbon graph from ``sigma0``; explicit ``sigma1``/``sigma2`` lines are kept
    verbatim so that :meth:`RibbonGraph.problems` can report inconsistencies."""
    perms = parse_permutation_file(text)
    derived = RibbonGraph.from_sigma0(perms["sigma0"])
    return RibbonGraph(
        derived.sigma0,
        perms.get("sigma1", derived.sigma1),
        perms.get("sigma2", derived.sigma2),
    )
