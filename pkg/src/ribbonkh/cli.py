"""Command-line interface.

    ribbonkh info INPUT           diagram, Tait graph and ribbon graph counts
    ribbonkh gradings INPUT       bigraded generator table of the quasi-tree complex
    ribbonkh quasitrees INPUT     quasi-trees with chord orders, words and paired trees
    ribbonkh jones INPUT          quasi-tree Euler characteristic vs Kauffman bracket
    ribbonkh chords INPUT         chord diagrams as SVG or JSON
    ribbonkh verify INPUT         every cross-oracle check, non-zero exit on failure
    ribbonkh corpus [PATH]        verify every diagram of a corpus file

INPUT is a file path, ``-`` for stdin, or inline text.  PD input may be a
single code or a corpus file of ``name<TAB>pdcode`` lines; permutation input
holds a ``sigma0 = (...)`` line.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from ribbonkh.corpus import CORPUS_ENV, default_corpus_text, is_corpus_text, parse_corpus
from ribbonkh.linkdiag import DiagramError, LinkDiagram, c_plus, parse_pd, tait_graph, writhe
from ribbonkh.poly import (
    Calibration,
    DiagramMeta,
    calibrate_and_compare,
    khovanov_indices,
)
from ribbonkh.quasitree import (
    Bigrading,
    QuasiTreeError,
    chord_diagram,
    enumerate_quasitrees,
    generating_polynomial,
    grading,
    quasitree_to_tree,
)
from ribbonkh.render import chord_grid_svg, chord_svg
from ribbonkh.ribbon import RibbonGraph, RibbonGraphError, format_cycles, from_diagram, ribbon_from_permutation_file
from ribbonkh.treemodel import count_spanning_trees_matrix_tree, tree_activities, tree_grading
from ribbonkh.verify import verify

log = logging.getLogger("ribbonkh")

HARD_MAX_CROSSINGS = 20
_SIGMA_LINE = re.compile(r"^\s*(sigma0|σ₀)\s*=", re.MULTILINE)
COMMANDS = ("info", "gradings", "quasitrees", "jones", "chords", "verify", "corpus")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    input: str | None
    input_kind: str = "auto"
    format: str = "text"
    max_crossings: int = 16
    jobs: int = 1
    epsilon: int = Calibration().epsilon
    sigma: int = Calibration().sigma
    shift: int = Calibration().shift
    out: str | None = None
    index: int | None = None

    def __post_init__(self):
        if not 1 <= self.max_crossings <= HARD_MAX_CROSSINGS:
            raise UsageError(f"--max-crossings must lie in 1..{HARD_MAX_CROSSINGS}")
        if self.jobs < 1:
            raise UsageError("--jobs must be positive")

    @property
    def calibration(self) -> Calibration:
        return Calibration(self.shift, self.epsilon, self.sigma)


@dataclass
class Entry:
    name: str
    diagram: LinkDiagram | None
    rg: RibbonGraph


def _read_input(config: RunConfig) -> tuple[str, str]:
    src = config.input
    if src is None:
        if config.command == "corpus":
            return "corpus", default_corpus_text()
        raise UsageError("missing INPUT")
    if src == "-":
        return "stdin", sys.stdin.read()
    path = Path(src)
    if path.is_file():
        return path.stem, path.read_text(encoding="utf-8")
    return "input", src


def load_entries(config: RunConfig) -> list[Entry]:
    name, text = _read_input(config)
    kind = config.input_kind
    if kind == "auto":
        kind = "sigma" if _SIGMA_LINE.search(text) else "pd"
    if kind == "sigma":
        rg = ribbon_from_permutation_file(text)
        _check_size(name, rg.n, config)
        return [Entry(name, None, rg)]
    if is_corpus_text(text):
        pairs = parse_corpus(text)
    else:
        pairs = [(name, parse_pd(text))]
    entries = []
    for nm, d in pairs:
        _check_size(nm, d.n, config)
        entries.append(Entry(nm, d, from_diagram(d)))
    return entries


def _check_size(name: str, n: int, config: RunConfig) -> None:
    if n > config.max_crossings:
        raise UsageError(f"{name}: {n} crossings exceeds --max-crossings {config.max_crossings}")


def _require_knot(entry: Entry, command: str) -> None:
    if entry.diagram is not None and entry.diagram.component_count != 1:
        raise UsageError(f"{entry.name}: '{command}' needs a knot diagram (one component)")


def info_record(entry: Entry, config: RunConfig) -> dict:
    rg, d = entry.rg, entry.diagram
    rec = {
        "name": entry.name,
        "n": rg.n,
        "ribbon": {
            "V": rg.vertex_count,
            "E": rg.edge_count,
            "F": rg.face_count,
            "genus": rg.genus,
            "sigma0": format_cycles(rg.sigma0),
            "sigma2": format_cycles(rg.sigma2),
        },
        "quasitrees": len(enumerate_quasitrees(rg, config.max_crossings, config.jobs)),
    }
    if d is not None:
        g = tait_graph(d)
        rec.update(
            writhe=writhe(d),
            c_plus=c_plus(d),
            components=d.component_count,
            tait={"V": g.vertex_count, "E+": g.positive_count, "E-": g.negative_count},
            spanning_trees=count_spanning_trees_matrix_tree(g),
        )
    return rec


def quasitree_records(entry: Entry, config: RunConfig) -> list[dict]:
    rg, d = entry.rg, entry.diagram
    meta = DiagramMeta.of(d, rg) if d is not None else None
    graph = tait_graph(d) if d is not None else None
    out = []
    for k, q in enumerate(enumerate_quasitrees(rg, config.max_crossings, config.jobs), 1):
        chords = chord_diagram(rg, q)
        g = grading(rg, q, chords)
        rec = {
            "id": k,
            "edges": sorted(q.edges),
            "cyclic_order": list(chords.cyclic_order),
            "word": chords.activity_word().ascii(),
            "word_pretty": chords.activity_word().pretty(),
            "u": g.u,
            "v": g.v,
            "genus": q.genus,
        }
        if meta is not None:
            i, j = khovanov_indices(g, meta)
            tree = quasitree_to_tree(rg, q, graph)
            tw = tree_activities(graph, tree)
            u_t, v_t = tree_grading(graph, tree)
            rec.update(
                i=i,
                j=j,
                tree={"edges": sorted(tree), "word": tw.ascii(), "word_pretty": tw.pretty(), "u": u_t, "v": v_t},
            )
        out.append(rec)
    return out


def gradings_record(entry: Entry, config: RunConfig) -> dict:
    _require_knot(entry, "gradings")
    rows = quasitree_records(entry, config)
    counts = generating_polynomial(Bigrading(r["u"], r["v"]) for r in rows)
    rec = {
        "name": entry.name,
        "ribbon_genus": entry.rg.genus,
        "thickness": len({v for _, v in counts}),
        "table": [{"u": u, "v": v, "count": c} for (u, v), c in counts.items()],
        "rows": rows,
    }
    if entry.diagram is not None:
        rec["meta"] = DiagramMeta.of(entry.diagram, entry.rg).__dict__
    return rec


def jones_record(entry: Entry, config: RunConfig) -> dict:
    if entry.diagram is None:
        raise UsageError("'jones' needs PD input (writhe is not defined for a bare ribbon graph)")
    _require_knot(entry, "jones")
    cmp = calibrate_and_compare(entry.diagram, config.calibration)
    return {
        "name": entry.name,
        "quasitree": cmp.quasitree.to_json(),
        "bracket": cmp.bracket.to_json(),
        "quasitree_text": cmp.quasitree.format("t"),
        "bracket_text": cmp.bracket.format("t"),
        "equal": cmp.equal,
        "calibration": {"shift": config.shift, "epsilon": config.epsilon, "sigma": config.sigma},
    }


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False)


def _grid_text(rec: dict) -> list[str]:
    cells = {(t["u"], t["v"]): t["count"] for t in rec["table"]}
    us = sorted({u for u, _ in cells})
    vs = sorted({v for _, v in cells}, reverse=True)
    lines = ["v\\u " + " ".join(f"{u:>3}" for u in us)]
    for v in vs:
        lines.append(f"{v:>3} " + " ".join(f"{cells.get((u, v), '.'):>3}" for u in us))
    return lines


def run(config: RunConfig, stdout=None) -> int:
    out = stdout or sys.stdout
    entries = load_entries(config)
    cmd, fmt = config.command, config.format

    if cmd == "info":
        recs = [info_record(e, config) for e in entries]
        if fmt == "json":
            print(_dump(recs if len(recs) > 1 else recs[0]), file=out)
        elif fmt == "tsv":
            print("name\tn\twrithe\tc_plus\tV(G)\tE+\tE-\tV(RG)\tE\tF\tg(RG)\tquasitrees", file=out)
            for r in recs:
                t = r.get("tait", {})
                print("\t".join(str(x) for x in (
                    r["name"], r["n"], r.get("writhe", ""), r.get("c_plus", ""), t.get("V", ""),
                    t.get("E+", ""), t.get("E-", ""), r["ribbon"]["V"], r["ribbon"]["E"],
                    r["ribbon"]["F"], r["ribbon"]["genus"], r["quasitrees"])), file=out)
        else:
            for r in recs:
                print(f"{r['name']}: n={r['n']}", file=out)
                if "writhe" in r:
                    t = r["tait"]
                    print(f"  writhe={r['writhe']} c+={r['c_plus']} components={r['components']}", file=out)
                    print(f"  Tait graph: V(G)={t['V']} E+={t['E+']} E-={t['E-']} "
                          f"spanning trees={r['spanning_trees']}", file=out)
                rb = r["ribbon"]
                print(f"  ribbon graph: V={rb['V']} E={rb['E']} F={rb['F']} g={rb['genus']}", file=out)
                print(f"  sigma0 = {rb['sigma0']}\n  sigma2 = {rb['sigma2']}", file=out)
                print(f"  quasi-trees: {r['quasitrees']}", file=out)
        return 0

    if cmd == "gradings":
        recs = [gradings_record(e, config) for e in entries]
        if fmt == "json":
            print(_dump(recs if len(recs) > 1 else recs[0]), file=out)
        elif fmt == "tsv":
            print("name\tid\tedges\tword\tchord_order\tu\tv\tgenus\ti\tj", file=out)
            for r in recs:
                for row in r["rows"]:
                    print("\t".join(str(x) for x in (
                        r["name"], row["id"], ",".join(map(str, row["edges"])), row["word"],
                        " ".join(map(str, row["cyclic_order"])), row["u"], row["v"], row["genus"],
                        row.get("i", ""), row.get("j", ""))), file=out)
        else:
            for r in recs:
                print(f"{r['name']}: {len(r['rows'])} generators, thickness {r['thickness']} "
                      f"(bound g(RG)+1 = {r['ribbon_genus'] + 1})", file=out)
                for line in _grid_text(r):
                    print("  " + line, file=out)
                for row in r["rows"]:
                    ij = f" (i,j)=({row['i']},{row['j']})" if "i" in row else ""
                    print(f"  Q{row['id']} {row['word_pretty']:<10} edges={row['edges']} "
                          f"(u,v)=({row['u']},{row['v']}){ij}", file=out)
        return 0

    if cmd == "quasitrees":
        recs = [(e, quasitree_records(e, config)) for e in entries]
        if fmt == "json":
            data = [{"name": e.name, "quasitrees": rows} for e, rows in recs]
            print(_dump(data if len(data) > 1 else data[0]), file=out)
        elif fmt == "tsv":
            print("name\ttree_edges\ttree_word\tu\tv\tquasitree_id", file=out)
            for e, rows in recs:
                for row in rows:
                    if "tree" not in row:
                        raise UsageError("tree rows need PD input")
                    t = row["tree"]
                    print(f"{e.name}\t{','.join(map(str, t['edges']))}\t{t['word']}\t{t['u']}\t{t['v']}\t{row['id']}",
                          file=out)
        else:
            for e, rows in recs:
                print(f"{e.name}: {len(rows)} quasi-trees", file=out)
                for row in rows:
                    tree = f"  <->  T edges={row['tree']['edges']} {row['tree']['word_pretty']}" if "tree" in row else ""
                    print(f"  Q{row['id']} edges={row['edges']} {row['word_pretty']} "
                          f"order=({' '.join(map(str, row['cyclic_order']))}) g={row['genus']}{tree}", file=out)
        return 0

    if cmd == "jones":
        recs = [jones_record(e, config) for e in entries]
        if fmt == "json":
            print(_dump(recs if len(recs) > 1 else recs[0]), file=out)
        else:
            for r in recs:
                print(f"{r['name']}: quasi-tree sum = {r['quasitree_text']}", file=out)
                print(f"{r['name']}: bracket Jones  = {r['bracket_text']}", file=out)
                print(f"{r['name']}: {'PASS' if r['equal'] else 'FAIL'}", file=out)
        return 0 if all(r["equal"] for r in recs) else 1

    if cmd == "chords":
        if len(entries) != 1:
            raise UsageError("'chords' takes a single diagram")
        e = entries[0]
        qts = enumerate_quasitrees(e.rg, config.max_crossings, config.jobs)
        items = []
        for k, q in enumerate(qts, 1):
            c = chord_diagram(e.rg, q)
            items.append((k, f"Q{k} {c.activity_word().pretty()}", c))
        if config.index is not None:
            items = [it for it in items if it[0] == config.index]
            if not items:
                raise UsageError(f"no quasi-tree with index {config.index}")
        if fmt == "json":
            print(_dump([dict(id=k, title=t, **c.to_json()) for k, t, c in items]), file=out)
        elif config.out:
            outdir = Path(config.out)
            outdir.mkdir(parents=True, exist_ok=True)
            for k, title, c in items:
                (outdir / f"{e.name}_Q{k}.svg").write_text(chord_svg(c, title), encoding="utf-8")
            print(f"wrote {len(items)} SVG files to {outdir}", file=out)
        elif len(items) == 1:
            out.write(chord_svg(items[0][2], items[0][1]))
        else:
            out.write(chord_grid_svg([(t, c) for _, t, c in items]))
        return 0

    if cmd in ("verify", "corpus"):
        reports = _verify_all(entries, config)
        failed = [r for r in reports if not r.passed]
        if fmt == "json":
            print(_dump([
                {"name": r.name, "passed": r.passed,
                 "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in r.checks]}
                for r in reports]), file=out)
        elif cmd == "corpus" and fmt == "text":
            for r in reports:
                print(f"{r.name}\t{'PASS' if r.passed else 'FAIL'}\t{len(r.checks)} checks", file=out)
                for c in r.checks:
                    if not c.passed:
                        print(f"  {c.name}: {c.detail}", file=out)
            print(f"{len(reports) - len(failed)}/{len(reports)} diagrams passed", file=out)
        else:
            for r in reports:
                for line in r.lines():
                    print(line, file=out)
        return 1 if failed else 0

    raise UsageError(f"unknown command {cmd!r}")


def _verify_one(args):
    entry, calibration = args
    return verify(entry.name, entry.diagram, entry.rg, calibration)


def _verify_all(entries: list[Entry], config: RunConfig):
    work = [(e, config.calibration) for e in entries]
    if config.jobs > 1 and len(entries) > 1:
        with ProcessPoolExecutor(config.jobs) as pool:
            return list(pool.map(_verify_one, work))
    return [_verify_one(w) for w in work]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ribbonkh", description="Quasi-tree model of reduced Khovanov homology.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help=f"file, '-' or inline text (corpus default: ${CORPUS_ENV} or bundled)")
    p.add_argument("--input-kind", choices=("auto", "pd", "sigma"), default="auto")
    p.add_argument("--format", choices=("text", "json", "tsv", "svg"), default="text")
    p.add_argument("--max-crossings", type=int, default=16)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--epsilon", type=int, choices=(1, -1), default=Calibration().epsilon)
    p.add_argument("--sigma", type=int, choices=(1, -1), default=Calibration().sigma)
    p.add_argument("--shift", type=int, default=Calibration().shift, help="power of q multiplying the Euler characteristic")
    p.add_argument("--out", help="directory for SVG files (chords)")
    p.add_argument("--index", type=int, help="single quasi-tree to draw (chords)")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_intermixed_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        config = RunConfig(
            command=args.command, input=args.input, input_kind=args.input_kind, format=args.format,
            max_crossings=args.max_crossings, jobs=args.jobs, epsilon=args.epsilon, sigma=args.sigma,
            shift=args.shift, out=args.out, index=args.index,
        )
        return run(config)
    except (UsageError, DiagramError, RibbonGraphError, QuasiTreeError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
