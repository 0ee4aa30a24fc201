"""Quasi-tree model of reduced Khovanov homology for knot diagrams."""

from ribbonkh.linkdiag import LinkDiagram, parse_pd, tait_graph
from ribbonkh.poly import LaurentPoly, jones_from_bracket, quasitree_jones
from ribbonkh.quasitree import chord_diagram, enumerate_quasitrees, grading
from ribbonkh.ribbon import RibbonGraph, from_diagram

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "LinkDiagram",
    "RibbonGraph",
    "chord_diagram",
    "enumerate_quasitrees",
    "from_diagram",
    "grading",
    "jones_from_bracket",
    "parse_pd",
    "quasitree_jones",
    "tait_graph",
]
