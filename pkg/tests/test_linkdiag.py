import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import FIGURE8, TREFOIL3, UNKNOT_CURL
from ribbonkh.linkdiag import (
    DiagramError,
    State,
    c_minus,
    c_plus,
    checkerboard_graphs,
    circle_count_mask,
    disjoint_union,
    mirror,
    parse_pd,
    reorder,
    smoothing_circle_count,
    state_circles,
    tait_graph,
    writhe,
)


def test_parse_accepts_both_bracket_styles():
    a = parse_pd(TREFOIL3)
    b = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]")
    assert a.crossings == b.crossings
    assert a.n == 3


def test_parse_skips_comments():
    d = parse_pd("# a comment\n" + TREFOIL3)
    assert d.n == 3


@pytest.mark.parametrize(
    "text",
    [
        "",
        "X(1,2,3)",
        "X(1,4,2,5) X(3,6,4,1) X(5,2,6,7)",  # label 7 used once
        "X(1,1,1,2) X(2,3,3,3)",  # label used more than twice
        "Y(1,2,2,1)",
    ],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(DiagramError):
        parse_pd(text)


def test_disconnected_diagram_rejected_unless_allowed():
    text = UNKNOT_CURL + " X(3,4,4,3)"
    with pytest.raises(DiagramError):
        parse_pd(text)
    assert parse_pd(text, require_connected=False).diagram_component_count == 2


def test_curl_counts():
    d = parse_pd(UNKNOT_CURL)
    assert d.component_count == 1
    assert abs(writhe(d)) == 1
    # one smoothing gives two circles, the other one circle
    assert sorted((circle_count_mask(d, 0), circle_count_mask(d, 1))) == [1, 2]


def test_trefoil_signs_uniform():
    d = parse_pd(TREFOIL3)
    assert len(set(d.signs)) == 1
    assert abs(writhe(d)) == 3
    assert c_plus(d) + c_minus(d) == 3


def test_figure_eight_writhe_zero():
    d = parse_pd(FIGURE8)
    assert writhe(d) == 0
    assert d.component_count == 1


def test_trefoil_state_counts():
    # the standard trefoil: all-A and all-B give 2 and 3 circles in some order
    d = parse_pd(TREFOIL3)
    assert sorted((circle_count_mask(d, 0), circle_count_mask(d, 0b111))) == [2, 3]


def test_state_helpers_agree():
    d = parse_pd(FIGURE8)
    for mask in range(16):
        s = State.from_b_edges(4, [k + 1 for k in range(4) if mask >> k & 1])
        assert s.b_mask == mask
        assert smoothing_circle_count(d, s) == circle_count_mask(d, mask) == len(state_circles(d, mask))
    assert State.all_a(4).b_mask == 0
    assert State.all_b(4).b_mask == 15


def test_faces_satisfy_euler(corpus):
    for _, d in corpus:
        assert len(d.faces) == d.n + 2


def test_mirror_negates_writhe(corpus):
    for _, d in corpus:
        m = mirror(d)
        assert writhe(m) == -writhe(d)
        assert circle_count_mask(m, 0) == circle_count_mask(d, (1 << d.n) - 1)


def test_reorder_preserves_invariants(corpus):
    for _, d in corpus[:20]:
        order = list(reversed(range(d.n)))
        r = reorder(d, order)
        assert writhe(r) == writhe(d)
        assert circle_count_mask(r, 0) == circle_count_mask(d, 0)


def test_disjoint_union_adds_circles():
    a, b = parse_pd(TREFOIL3), parse_pd(UNKNOT_CURL)
    u = disjoint_union(a, b)
    assert u.n == 4
    assert u.component_count == 2
    assert circle_count_mask(u, 0) == circle_count_mask(a, 0) + circle_count_mask(b, 0)


def test_tait_graph_of_four_crossing_trefoil(trefoil4):
    g = tait_graph(trefoil4)
    assert g.vertex_count == 3
    assert g.positive_count == g.negative_count == 2
    assert g.positive_edges() == {1, 2}
    assert writhe(trefoil4) == -4 and c_plus(trefoil4) == 0


def test_alternate_shading_negates_signs(trefoil4):
    g, h = tait_graph(trefoil4), tait_graph(trefoil4, alternate=True)
    assert g.vertex_count + h.vertex_count == trefoil4.n + 2
    assert [g.sign(e) for e in range(1, 5)] == [-h.sign(e) for e in range(1, 5)]


def test_tait_graph_prefers_positive_majority(corpus):
    for _, d in corpus:
        g = tait_graph(d)
        first, second = checkerboard_graphs(d)
        assert {g, tait_graph(d, alternate=True)} == {first, second}
        assert g.positive_count >= g.negative_count
        assert g.vertex_count + tait_graph(d, alternate=True).vertex_count == d.n + 2


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_single_switch_changes_circles_by_one(corpus, data):
    _, d = data.draw(st.sampled_from(corpus))
    mask = data.draw(st.integers(0, (1 << d.n) - 1))
    k = data.draw(st.integers(0, d.n - 1))
    assert abs(circle_count_mask(d, mask) - circle_count_mask(d, mask ^ (1 << k))) == 1
