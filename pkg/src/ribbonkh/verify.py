"""Cross-checks between the ribbon-graph side and the independent oracles."""

from __future__ import annotations

from dataclasses import dataclass, field

from ribbonkh.linkdiag import LinkDiagram, circle_count_mask, tait_graph
from ribbonkh.poly import FROZEN, Calibration, calibrate_and_compare
from ribbonkh.quasitree import (
    QuasiTreeError,
    chord_diagram,
    enumerate_quasitrees,
    genus_from_chords,
    grading,
    quasitree_to_tree,
    tait_constant,
    tree_to_quasitree,
)
from ribbonkh.ribbon import RibbonGraph, RibbonGraphError, from_diagram
from ribbonkh.treemodel import (
    count_spanning_trees_matrix_tree,
    enumerate_spanning_trees,
    tree_activities,
    tree_grading,
)

STATE_CHECK_MAX_CROSSINGS = 10


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class Report:
    name: str
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, failures: list[str], ok_detail: str = "") -> None:
        if failures:
            shown = "; ".join(failures[:3]) + (f"; ... ({len(failures)} total)" if len(failures) > 3 else "")
            self.checks.append(Check(name, False, shown))
        else:
            self.checks.append(Check(name, True, ok_detail))

    def lines(self) -> list[str]:
        return [
            f"{self.name}\t{c.name}\t{'PASS' if c.passed else 'FAIL'}\t{c.detail}" for c in self.checks
        ]


def verify(
    name: str,
    diagram: LinkDiagram | None = None,
    rg: RibbonGraph | None = None,
    calibration: Calibration = FROZEN,
    state_check_max: int = STATE_CHECK_MAX_CROSSINGS,
    jobs: int = 1,
) -> Report:
    report = Report(name)
    if rg is None:
        rg = from_diagram(diagram)

    problems = rg.problems()
    report.add("ribbon-structure", problems, f"V={rg.vertex_count} E={rg.edge_count} F={rg.face_count}")
    if problems:
        return report
    try:
        g_rg = rg.genus
    except RibbonGraphError as exc:
        report.add("ribbon-genus", [str(exc)])
        return report

    if diagram is not None:
        fails = []
        if circle_count_mask(diagram, 0) != rg.vertex_count:
            fails.append(f"|all-A| = {circle_count_mask(diagram, 0)} but V(RG) = {rg.vertex_count}")
        report.add("all-A-circles", fails)
        if diagram.n <= state_check_max:
            fails = []
            for mask in range(1 << diagram.n):
                f_h, s = rg.faces_of_mask(mask), circle_count_mask(diagram, mask)
                if f_h != s:
                    b_edges = [k + 1 for k in range(diagram.n) if mask >> k & 1]
                    fails.append(f"H={b_edges}: F(H)={f_h} |s|={s}")
            report.add("faces-vs-state-circles", fails, f"{1 << diagram.n} states")

    qts = enumerate_quasitrees(rg, jobs=jobs)
    chords = {q.edges: chord_diagram(rg, q) for q in qts}
    gradings = {q.edges: grading(rg, q, chords[q.edges]) for q in qts}

    fails = []
    for q in qts:
        g_chord = genus_from_chords(chords[q.edges])
        if g_chord != q.genus:
            fails.append(f"Q={sorted(q.edges)}: chord rank/2={g_chord} Euler={q.genus}")
    report.add("genus-chords-vs-euler", fails, f"{len(qts)} quasi-trees")

    fails = [f"Q={sorted(q.edges)}: g={q.genus}" for q in qts if not 0 <= q.genus <= g_rg]
    rows = len({g.v for g in gradings.values()})
    if rows > g_rg + 1:
        fails.append(f"{rows} v-rows > g(RG)+1 = {g_rg + 1}")
    report.add("thickness-bound", fails, f"rows={rows} g(RG)={g_rg}")

    if diagram is None:
        return report

    graph = tait_graph(diagram)
    trees = enumerate_spanning_trees(graph)
    det = count_spanning_trees_matrix_tree(graph)
    fails = []
    if not len(qts) == len(trees) == det:
        fails.append(f"#Q={len(qts)} #T={len(trees)} det={det}")
    if graph.positive_count < graph.negative_count:
        fails.append("Tait graph has E+ < E-")
    paired = {}
    for q in qts:
        try:
            t = quasitree_to_tree(rg, q, graph)
        except QuasiTreeError as exc:
            fails.append(str(exc))
            continue
        back = tree_to_quasitree(graph, t, rg)
        if back.edges != q.edges:
            fails.append(f"round trip Q={sorted(q.edges)} -> T={sorted(t)} -> {sorted(back.edges)}")
        paired[q.edges] = t
    if set(paired.values()) != set(trees):
        fails.append("image of the quasi-trees is not the set of spanning trees")
    report.add("bijection-and-matrix-tree", fails, f"{det} trees")

    const = tait_constant(rg, graph)
    fails, live_fails, u_fails = [], [], []
    for q in qts:
        t = paired.get(q.edges)
        if t is None:
            continue
        u_t, v_t = tree_grading(graph, t)
        if v_t + q.genus != const:
            fails.append(f"Q={sorted(q.edges)}: v(T)+g(Q)={v_t + q.genus} != {const}")
        if u_t != gradings[q.edges].u:
            u_fails.append(f"Q={sorted(q.edges)}: u(T)={u_t} u(Q)={gradings[q.edges].u}")
        t_live = tree_activities(graph, t).live
        q_live = chords[q.edges].live
        for e in range(rg.n):
            if t_live[e] != q_live[e]:
                live_fails.append(f"Q={sorted(q.edges)} edge {e + 1}: chord live={q_live[e]} tree live={t_live[e]}")
    report.add("v-plus-genus-constant", fails, f"constant={const}")
    report.add("chord-vs-tree-liveness", live_fails)
    report.add("u-tree-equals-u-quasitree", u_fails)

    if diagram.component_count == 1:
        cmp = calibrate_and_compare(diagram, calibration)
        report.add(
            "euler-characteristic-equals-jones",
            [] if cmp.equal else [f"quasi-tree {cmp.quasitree.format('t')} vs bracket {cmp.bracket.format('t')}"],
            cmp.bracket.format("t"),
        )
    return report
