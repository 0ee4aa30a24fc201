"""Exact Laurent polynomials, the Kauffman bracket and the quasi-tree Euler characteristic.

Exponents may be half-integers; they are stored doubled.  Nothing here uses
floating point.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from ribbonkh.linkdiag import LinkDiagram, c_plus, circle_count_mask, writhe
from ribbonkh.quasitree import (
    Bigrading,
    chord_diagram,
    enumerate_quasitrees,
    generating_polynomial,
    grading,
)
from ribbonkh.ribbon import RibbonGraph, from_diagram

MAX_BRACKET_CROSSINGS = 20

# Conventions turning the quasi-tree Euler characteristic into the Jones
# polynomial:  J(t) = (q^Q_SHIFT * chi(q)) at q = EPSILON * t^(SIGMA / 2).
# The index relations put the reduced unknot at j = -1, hence the shift.  For
# knots every shifted exponent is even, so EPSILON is not observable and is
# fixed to +1.  ``calibrate`` re-derives these from the unknot and trefoil.
Q_SHIFT = 1
EPSILON = 1
SIGMA = 1


class LaurentPoly:
    """Sparse integer Laurent polynomial ``sum c * x^(d/2)`` keyed by doubled exponent ``d``."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, int] | None = None):
        self.terms: dict[int, int] = {}
        for d, c in (terms or {}).items():
            if c:
                self.terms[int(d)] = self.terms.get(int(d), 0) + int(c)
        self.terms = {d: c for d, c in sorted(self.terms.items()) if c}

    @classmethod
    def monomial(cls, exponent: int | Fraction, coefficient: int = 1) -> LaurentPoly:
        doubled = Fraction(exponent) * 2
        if doubled.denominator != 1:
            raise ValueError(f"exponent {exponent} is not a half-integer")
        return cls({int(doubled): coefficient})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls({0: c})

    def __add__(self, other):
        other = _promote(other)
        out = dict(self.terms)
        for d, c in other.terms.items():
            out[d] = out.get(d, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({d: -c for d, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_promote(other))

    def __rsub__(self, other):
        return _promote(other) - self

    def __mul__(self, other):
        other = _promote(other)
        out: dict[int, int] = {}
        for d1, c1 in self.terms.items():
            for d2, c2 in other.terms.items():
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (d, c), = self.terms.items()
            if c not in (1, -1):
                raise ValueError("monomial coefficient must be a unit")
            return LaurentPoly({-d * -k: c ** -k})
        out = LaurentPoly.constant(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.constant(other)
        return isinstance(other, LaurentPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"LaurentPoly({self.terms!r})"

    def rescale(self, factor: Fraction | int) -> LaurentPoly:
        """Substitute ``x -> x^factor`` (result must keep half-integer exponents)."""
        out = {}
        for d, c in self.terms.items():
            nd = Fraction(d) * factor
            if nd.denominator != 1:
                raise ValueError(f"exponent {Fraction(d, 2) * factor} is not a half-integer")
            out[int(nd)] = out.get(int(nd), 0) + c
        return LaurentPoly(out)

    def substitute_signed(self, epsilon: int, sigma: int) -> LaurentPoly:
        """``q -> epsilon * t^(sigma/2)`` for a polynomial with integer exponents in ``q``."""
        out = {}
        for d, c in self.terms.items():
            if d % 2:
                raise ValueError("signed substitution needs integer exponents")
            j = d // 2
            out[sigma * j] = out.get(sigma * j, 0) + c * epsilon ** (j % 2)
        return LaurentPoly(out)

    def mirror(self) -> LaurentPoly:
        return self.rescale(-1)

    def to_json(self) -> list[list[int]]:
        return [[d, c] for d, c in self.terms.items()]

    @classmethod
    def from_json(cls, data: Iterable[Iterable[int]]) -> LaurentPoly:
        return cls({int(d): int(c) for d, c in data})

    def format(self, var: str = "q") -> str:
        if not self.terms:
            return "0"
        parts = []
        for d, c in sorted(self.terms.items(), reverse=True):
            exp = str(d // 2) if d % 2 == 0 else f"{d}/2"
            mono = "" if d == 0 else (var if d == 2 else f"{var}^{exp}")
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append(("-" if c < 0 else "+") + body)
        text = " ".join(p[0] + " " + p[1:] for p in parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __str__(self):
        return self.format()

    @classmethod
    def parse(cls, text: str, var: str = "t") -> LaurentPoly:
        """Parse ``c*t^e`` style text; ``e`` may be ``(-3)``, ``p/2`` or ``(p/2)``."""
        s = text.replace(" ", "").replace("**", "^")
        if not s or s == "0":
            return cls()
        term = re.compile(
            rf"([+-]?)(\d*)\*?(?:({re.escape(var)})(?:\^\(?(-?\d+(?:/2)?)\)?)?)?"
        )
        out: dict[int, int] = {}
        pos = 0
        while pos < len(s):
            m = term.match(s, pos)
            if not m or m.end() == pos or (not m.group(2) and not m.group(3)):
                raise ValueError(f"cannot parse polynomial {text!r} at {s[pos:]!r}")
            coeff = int(m.group(2) or 1) * (-1 if m.group(1) == "-" else 1)
            if m.group(3):
                exp = Fraction(m.group(4)) if m.group(4) else Fraction(1)
            else:
                exp = Fraction(0)
            d = int(exp * 2)
            out[d] = out.get(d, 0) + coeff
            pos = m.end()
        return cls(out)


def _promote(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.constant(x)
    raise TypeError(f"cannot combine LaurentPoly with {type(x).__name__}")


A = LaurentPoly.monomial(1)
LOOP = -(A ** 2) - A ** -2


def kauffman_bracket(diagram: LinkDiagram, max_crossings: int = MAX_BRACKET_CROSSINGS) -> LaurentPoly:
    """State sum ``sum_s A^(#A - #B) (-A^2 - A^-2)^(|s| - 1)`` as a polynomial in ``A``."""
    n = diagram.n
    if n > max_crossings:
        raise ValueError(f"{n} crossings exceeds the bracket bound {max_crossings}")
    tally: dict[tuple[int, int], int] = {}
    for mask in range(1 << n):
        key = (n - 2 * mask.bit_count(), circle_count_mask(diagram, mask))
        tally[key] = tally.get(key, 0) + 1
    powers = [LaurentPoly.constant(1)]
    total = LaurentPoly()
    for (a_exp, circles), count in tally.items():
        while len(powers) < circles:
            powers.append(powers[-1] * LOOP)
        total = total + LaurentPoly({2 * a_exp: count}) * powers[circles - 1]
    return total


def jones_from_bracket(diagram: LinkDiagram) -> LaurentPoly:
    """``(-A^3)^(-w) <D>`` with ``A = t^(-1/4)``, as a polynomial in ``t``."""
    normalised = (-(A ** 3)) ** (-writhe(diagram)) * kauffman_bracket(diagram)
    return normalised.rescale(Fraction(-1, 4))


@dataclass(frozen=True)
class DiagramMeta:
    writhe: int
    c_plus: int
    vertex_count: int

    @classmethod
    def of(cls, diagram: LinkDiagram, rg: RibbonGraph | None = None) -> DiagramMeta:
        rg = rg or from_diagram(diagram)
        return cls(writhe(diagram), c_plus(diagram), rg.vertex_count)


@dataclass(frozen=True)
class BigradedTable:
    counts: dict[tuple[int, int], int]
    meta: DiagramMeta
    ribbon_genus: int
    rows: tuple = field(default=(), compare=False, repr=False)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def thickness(self) -> int:
        return len({v for _, v in self.counts})


def khovanov_indices(g: Bigrading, meta: DiagramMeta) -> tuple[int, int]:
    """Invert ``u = j - i - w + 1`` and ``v = j/2 - i + (V - c+)/2``."""
    j = 2 * (g.u + meta.writhe - 1) - 2 * g.v + (meta.vertex_count - meta.c_plus)
    i = j - g.u - meta.writhe + 1
    return i, j


def bigrading_from_indices(i: int, j: int, meta: DiagramMeta) -> Bigrading:
    u = j - i - meta.writhe + 1
    twice_v = j - 2 * i + meta.vertex_count - meta.c_plus
    if twice_v % 2:
        raise ValueError(f"(i, j) = ({i}, {j}) gives a non-integral v")
    return Bigrading(u, twice_v // 2)


def bigraded_table(diagram: LinkDiagram, rg: RibbonGraph | None = None, jobs: int = 1) -> BigradedTable:
    rg = rg or from_diagram(diagram)
    gradings = [grading(rg, q, chord_diagram(rg, q)) for q in enumerate_quasitrees(rg, jobs=jobs)]
    return BigradedTable(generating_polynomial(gradings), DiagramMeta.of(diagram, rg), rg.genus)


def euler_characteristic(table: BigradedTable) -> LaurentPoly:
    """``sum (-1)^i q^j`` over the generators, as a polynomial in ``q``."""
    out: dict[int, int] = {}
    for (u, v), count in table.counts.items():
        i, j = khovanov_indices(Bigrading(u, v), table.meta)
        out[2 * j] = out.get(2 * j, 0) + count * (-1) ** (i % 2)
    return LaurentPoly(out)


@dataclass(frozen=True)
class Calibration:
    shift: int = Q_SHIFT
    epsilon: int = EPSILON
    sigma: int = SIGMA
    equivalent: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def apply(self, chi: LaurentPoly) -> LaurentPoly:
        return (LaurentPoly.monomial(self.shift) * chi).substitute_signed(self.epsilon, self.sigma)


FROZEN = Calibration()


def quasitree_jones(diagram: LinkDiagram, calibration: Calibration = FROZEN) -> LaurentPoly:
    return calibration.apply(euler_characteristic(bigraded_table(diagram)))


def calibrate(unknot: LinkDiagram, anchors: Iterable[LinkDiagram]) -> Calibration:
    """Pin the conventions linking ``sum (-1)^i q^j`` to the bracket Jones polynomial.

    The unknot fixes the normalising power of ``q``; the remaining anchors must
    then single out the sign pattern ``(epsilon, sigma)``.  Patterns that give
    identical images on every anchor are reported together as equivalent.
    """
    unknot_chi = euler_characteristic(bigraded_table(unknot))
    if len(unknot_chi.terms) != 1:
        raise ValueError(f"unknot Euler characteristic {unknot_chi} is not a monomial")
    (d, _), = unknot_chi.terms.items()
    if d % 2:
        raise ValueError("unknot sits in a half-integral q-degree")
    shift = -d // 2
    pairs = [
        (euler_characteristic(bigraded_table(k)), jones_from_bracket(k))
        for k in [unknot, *anchors]
    ]
    hits = []
    for eps in (1, -1):
        for sig in (1, -1):
            cal = Calibration(shift, eps, sig)
            if all(cal.apply(chi) == jones for chi, jones in pairs):
                hits.append(cal)
    if not hits:
        raise ValueError("no substitution matches the bracket Jones polynomial")
    images = {tuple(cal.apply(chi) for chi, _ in pairs) for cal in hits}
    if len(images) != 1 or len({c.sigma for c in hits}) != 1:
        raise ValueError(f"calibration is ambiguous: {hits}")
    best = max(hits, key=lambda c: c.epsilon)
    return Calibration(shift, best.epsilon, best.sigma, tuple((c.epsilon, c.sigma) for c in hits))


@dataclass(frozen=True)
class Comparison:
    quasitree: LaurentPoly
    bracket: LaurentPoly

    @property
    def equal(self) -> bool:
        return self.quasitree == self.bracket

    @property
    def diff(self) -> LaurentPoly:
        return self.quasitree - self.bracket


def calibrate_and_compare(diagram: LinkDiagram, calibration: Calibration = FROZEN) -> Comparison:
    if diagram.component_count != 1:
        raise ValueError("the Jones comparison is only defined for knot diagrams")
    return Comparison(quasitree_jones(diagram, calibration), jones_from_bracket(diagram))
