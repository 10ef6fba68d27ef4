import random

import pytest
from hypothesis import strategies as st

from beicheck.cli import load_fixture
from beicheck.graph import Graph


def random_graph(rng: random.Random, n: int, p: float = 0.4) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph.from_edges(n, edges)


@st.composite
def graphs(draw, min_n=0, max_n=8):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [e for e, c in zip(pairs, chosen) if c])


@pytest.fixture(scope="session")
def fig1():
    return load_fixture("fig1")


@pytest.fixture(scope="session")
def fig2():
    return load_fixture("fig2")


@pytest.fixture(scope="session")
def fig3():
    return load_fixture("fig3")


@pytest.fixture(scope="session")
def fig4():
    return load_fixture("fig4")


def m1(*vs):
    """Mask from 1-based vertices."""
    out = 0
    for v in vs:
        out |= 1 << (v - 1)
    return out


def one_based(mask):
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(num: int, ok: bool | None, detail: str) -> str:
    status = "SKIP" if ok is None else ("PASS" if ok else "FAIL")
    line = f"criterion {num}: {status}  {detail}"
    ACCEPTANCE_LINES[num] = line
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[num])
