import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ribbonkh.corpus import data_text, load_corpus  # noqa: E402
from ribbonkh.linkdiag import parse_pd  # noqa: E402
from ribbonkh.ribbon import RibbonGraph, parse_cycles  # noqa: E402

SIGMA0_EXAMPLE = "(15724863)"
SIGMA2_EXAMPLE = "(14)(2835)(67)"
TREFOIL3 = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
UNKNOT_CURL = "X(1,2,2,1)"
FIGURE8 = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"
DATA = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture(scope="session")
def example_rg():
    return RibbonGraph.from_sigma0(parse_cycles(SIGMA0_EXAMPLE, 8))


@pytest.fixture(scope="session")
def trefoil4():
    return parse_pd(data_text("trefoil4.pd"))


@pytest.fixture(scope="session")
def knotinfo_jones():
    out = {}
    for line in (DATA / "knotinfo_jones.tsv").read_text().splitlines():
        if line and not line.startswith("#"):
            name, poly = line.split("\t")
            out[name] = poly
    return out


ACCEPTANCE_LINES: list[str] = []


def record_criterion(label: str, passed: bool, detail: str = "") -> None:
    line = f"criterion {label}: {'PASS' if passed else 'FAIL'}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
