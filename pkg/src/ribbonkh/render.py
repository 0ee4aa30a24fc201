"""SVG 1.1 drawings of ordered chord diagrams."""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

from ribbonkh.quasitree import ChordDiagram

SIZE = 220
RADIUS = 80
LIVE_COLOR = "#c0392b"
DEAD_COLOR = "#34495e"


def _point(idx: int, total: int, r: float) -> tuple[float, float]:
    # mark 0 at twelve o'clock, counterclockwise
    angle = math.pi / 2 + 2 * math.pi * idx / total
    return SIZE / 2 + r * math.cos(angle), SIZE / 2 - r * math.sin(angle)


def chord_svg_body(chords: ChordDiagram, title: str = "") -> str:
    total = len(chords.cyclic_order)
    parts = [
        f'<circle cx="{SIZE / 2}" cy="{SIZE / 2}" r="{RADIUS}" fill="none" stroke="#999" stroke-width="1"/>'
    ]
    for i in range(1, chords.n + 1):
        (x1, y1) = _point(chords.positions[2 * i - 1], total, RADIUS)
        (x2, y2) = _point(chords.positions[2 * i], total, RADIUS)
        color = LIVE_COLOR if chords.live[i - 1] else DEAD_COLOR
        width = 2.5 if chords.live[i - 1] else 1.5
        dash = "" if chords.in_quasitree[i - 1] else ' stroke-dasharray="5,4"'
        parts.append(
            f'<line class="chord" data-chord="{i}" data-in-quasitree="{str(chords.in_quasitree[i - 1]).lower()}" '
            f'data-live="{str(chords.live[i - 1]).lower()}" x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" '
            f'y2="{y2:.2f}" stroke="{color}" stroke-width="{width}"{dash}/>'
        )
    for idx, mark in enumerate(chords.cyclic_order):
        x, y = _point(idx, total, RADIUS)
        lx, ly = _point(idx, total, RADIUS + 14)
        parts.append(f'<circle class="mark" data-mark="{mark}" cx="{x:.2f}" cy="{y:.2f}" r="2.5" fill="#000"/>')
        parts.append(
            f'<text x="{lx:.2f}" y="{ly:.2f}" font-size="11" text-anchor="middle" '
            f'dominant-baseline="middle">{mark}</text>'
        )
    if title:
        parts.append(f'<text x="{SIZE / 2}" y="14" font-size="12" text-anchor="middle">{escape(title)}</text>')
    return "\n".join(parts)


def chord_svg(chords: ChordDiagram, title: str = "") -> str:
    """A standalone document: solid chords lie in the quasi-tree, dashed ones do not;
    live chords are red and thicker."""
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">\n{chord_svg_body(chords, title)}\n</svg>\n'
    )


def chord_grid_svg(items: list[tuple[str, ChordDiagram]], columns: int = 4) -> str:
    rows = max(1, -(-len(items) // columns))
    cols = min(columns, max(1, len(items)))
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{cols * SIZE}" '
        f'height="{rows * SIZE}">',
    ]
    for k, (title, chords) in enumerate(items):
        x, y = (k % columns) * SIZE, (k // columns) * SIZE
        out.append(f'<svg x="{x}" y="{y}" width="{SIZE}" height="{SIZE}">')
        out.append(chord_svg_body(chords, title))
        out.append("</svg>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
