import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import SIGMA0_EXAMPLE, SIGMA2_EXAMPLE
from ribbonkh.corpus import data_text
from ribbonkh.linkdiag import DiagramError, circle_count_mask, parse_pd
from ribbonkh.ribbon import (
    RibbonGraph,
    RibbonGraphError,
    SpanningSubgraph,
    compose,
    cycles,
    edges_to_mask,
    face_count,
    face_count_of_subgraph,
    format_cycles,
    from_diagram,
    genus,
    invert,
    mask_to_edges,
    pair_involution,
    parse_cycles,
    parse_permutation_file,
    ribbon_from_permutation_file,
    vertex_count,
)


def faces_by_deletion(rg: RibbonGraph, edges) -> int:
    """Faces of a spanning subgraph from its own rotation system: restrict sigma0 to
    the kept marks, then count orbits of sigma1 o sigma0^-1 plus bare vertices."""
    kept = {m for e in edges for m in (2 * e - 1, 2 * e)}
    faces = 0
    for cyc in cycles(rg.sigma0):
        if not kept & set(cyc):
            faces += 1
    nxt = {}
    for cyc in cycles(rg.sigma0):
        ks = [m for m in cyc if m in kept]
        for a, b in zip(ks, ks[1:] + ks[:1]):
            nxt[a] = b
    prev = {b: a for a, b in nxt.items()}
    seen = set()
    for m in kept:
        if m in seen:
            continue
        faces += 1
        x = m
        while x not in seen:
            seen.add(x)
            # sigma1 after the restricted sigma0^-1
            y = prev[x]
            x = y + 1 if y % 2 else y - 1
    return faces


def test_parse_and_format_cycles():
    p = parse_cycles(SIGMA0_EXAMPLE, 8)
    assert format_cycles(p) == "(1 5 7 2 4 8 6 3)"
    assert format_cycles(p, compact=True) == "(15724863)"
    assert parse_cycles("(1 5 7 2 4 8 6 3)") == p
    assert parse_cycles("(1)(2)") == (0, 1, 2)


@pytest.mark.parametrize("text", ["(1 2 2)", "(1 5)", "(a b)"])
def test_parse_cycles_rejects(text):
    with pytest.raises((RibbonGraphError, ValueError)):
        parse_cycles(text, 4 if text == "(1 5)" else None)


def test_example_counts(example_rg):
    rg = example_rg
    assert format_cycles(rg.sigma2) == format_cycles(parse_cycles(SIGMA2_EXAMPLE, 8))
    assert (rg.vertex_count, rg.edge_count, rg.face_count, rg.genus) == (1, 4, 3, 1)
    assert (vertex_count(rg), face_count(rg), genus(rg)) == (1, 3, 1)
    assert rg.problems() == []
    assert rg.is_connected


def test_bridge_and_loop():
    bridge = RibbonGraph.from_sigma0(parse_cycles("(1)(2)"))
    assert (bridge.vertex_count, bridge.edge_count, bridge.face_count, bridge.genus) == (2, 1, 1, 0)
    loop = RibbonGraph.from_sigma0(parse_cycles("(1 2)"))
    assert (loop.vertex_count, loop.edge_count, loop.face_count, loop.genus) == (1, 1, 2, 0)


def test_face_count_of_subgraph_cases(example_rg):
    rg = example_rg
    assert face_count_of_subgraph(rg, []) == 1
    assert face_count_of_subgraph(rg, [1, 2, 3, 4]) == 3
    assert face_count_of_subgraph(rg, SpanningSubgraph(rg, frozenset({1, 3}))) == 1
    with pytest.raises(RibbonGraphError):
        face_count_of_subgraph(rg, [5])


def test_face_count_matches_deletion_oracle(corpus):
    rng = random.Random(7)
    for _, d in corpus:
        rg = from_diagram(d)
        for _ in range(10):
            edges = [e for e in range(1, d.n + 1) if rng.random() < 0.5]
            assert face_count_of_subgraph(rg, edges) == faces_by_deletion(rg, edges)


def test_mask_helpers():
    assert edges_to_mask({1, 3}) == 0b101
    assert mask_to_edges(0b101) == {1, 3}
    assert mask_to_edges(edges_to_mask({2, 4, 9})) == {2, 4, 9}


def test_permutation_algebra():
    p = parse_cycles("(1 2 3)(4)")
    assert compose(p, invert(p)) == tuple(range(5))
    assert pair_involution(2) == (0, 2, 1, 4, 3)


def test_permutation_file_roundtrip():
    text = data_text("trefoil4.sigma")
    rg = ribbon_from_permutation_file(text)
    assert format_cycles(rg.sigma0, compact=True) == "(15724863)"
    assert rg.problems() == []
    perms = parse_permutation_file("σ₀ = (15724863)\nσ₂ = (14)(2835)(67)\n")
    assert perms["sigma2"] == parse_cycles(SIGMA2_EXAMPLE, 8)


def test_corrupted_sigma2_reports_failing_orbit():
    rg = ribbon_from_permutation_file("sigma0 = (15724863)\nsigma2 = (14)(2853)(67)\n")
    problems = rg.problems()
    assert len(problems) == 1
    assert "(2 8 5 3)" in problems[0]


def test_from_diagram_golden_sigma0(trefoil4):
    # with the site labels of crossings 2 and 3 exchanged, the PD route lands on the
    # published rotation system (its inverse would describe the same map reflected)
    rg = from_diagram(trefoil4, swap=(2, 3))
    target = parse_cycles(SIGMA0_EXAMPLE, 8)
    assert rg.sigma0 in (target, invert(target))


def test_from_diagram_sigma_text_file_agrees(trefoil4):
    pd_text = data_text("trefoil4.pd")
    assert parse_pd(pd_text) == trefoil4


def test_all_a_circles_are_vertices(corpus):
    for _, d in corpus:
        rg = from_diagram(d)
        assert rg.vertex_count == circle_count_mask(d, 0)
        assert rg.face_count == circle_count_mask(d, (1 << d.n) - 1)
        assert rg.problems() == []


def test_from_diagram_needs_connected():
    d = parse_pd("X(1,2,2,1) X(3,4,4,3)", require_connected=False)
    with pytest.raises(DiagramError):
        from_diagram(d)


def test_faces_equal_state_circles_on_example(trefoil4):
    rg = from_diagram(trefoil4)
    for mask in range(16):
        assert rg.faces_of_mask(mask) == circle_count_mask(trefoil4, mask)


def test_genus_rejects_odd_euler():
    with pytest.raises(RibbonGraphError):
        RibbonGraph((0, 1, 2), (0, 2, 1), (0, 1, 2)).genus


@settings(max_examples=50, deadline=None)
@given(data=st.data())
def test_relabel_preserves_counts(corpus, data):
    _, d = data.draw(st.sampled_from(corpus))
    rg = from_diagram(d)
    perm = data.draw(st.permutations(range(1, d.n + 1)))
    flips = data.draw(st.lists(st.booleans(), min_size=d.n, max_size=d.n))
    mapping = [0] * (2 * d.n + 1)
    for old, new in enumerate(perm, 1):
        a, b = 2 * new - 1, 2 * new
        if flips[old - 1]:
            a, b = b, a
        mapping[2 * old - 1], mapping[2 * old] = a, b
    r = rg.relabel(mapping)
    assert (r.vertex_count, r.edge_count, r.face_count, r.genus) == (
        rg.vertex_count, rg.edge_count, rg.face_count, rg.genus)
    assert r.problems() == []
    mask = data.draw(st.integers(0, (1 << d.n) - 1))
    image = edges_to_mask(perm[e - 1] for e in mask_to_edges(mask))
    assert r.faces_of_mask(image) == rg.faces_of_mask(mask)


def test_swap_marks_is_involution(example_rg):
    assert example_rg.swap_marks([1, 3]).swap_marks([1, 3]) == example_rg
