"""Corpus files: one diagram per line as ``name<TAB>pdcode``; ``#`` comments."""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path

from ribbonkh.linkdiag import LinkDiagram, parse_pd

CORPUS_ENV = "RIBBONKH_CORPUS"


def data_text(name: str) -> str:
    return resources.files("ribbonkh").joinpath("data", name).read_text(encoding="utf-8")


def default_corpus_text() -> str:
    path = os.environ.get(CORPUS_ENV)
    if path:
        return Path(path).read_text(encoding="utf-8")
    return data_text("knots_le9.tsv")


def parse_corpus(text: str) -> list[tuple[str, LinkDiagram]]:
    entries = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "\t" not in line:
            raise ValueError(f"corpus line {lineno}: expected name<TAB>pdcode")
        name, code = line.split("\t", 1)
        entries.append((name.strip(), parse_pd(code)))
    return entries


def is_corpus_text(text: str) -> bool:
    return any("\t" in ln and not ln.lstrip().startswith("#") for ln in text.splitlines())


def load_corpus(path: str | os.PathLike | None = None) -> list[tuple[str, LinkDiagram]]:
    text = Path(path).read_text(encoding="utf-8") if path else default_corpus_text()
    return parse_corpus(text)
