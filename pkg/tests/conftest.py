"""Shared test configuration: hypothesis strategies for connected graphs and
the acceptance-criteria summary printed after the run."""

import re

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from rumorspread import Graph

settings.register_profile(
    "suite",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suite")


@st.composite
def connected_graphs(draw, min_nodes: int = 2, max_nodes: int = 8):
    """Connected graph built from a random spanning tree plus extra edges."""
    n = draw(st.integers(min_nodes, max_nodes))
    edges = set()
    for i in range(1, n):
        parent = draw(st.integers(0, i - 1))
        edges.add((parent, i))
    rest = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in edges
    ]
    if rest:
        extra = draw(st.sets(st.sampled_from(rest)))
        edges |= extra
    return Graph.from_edges(n, sorted(edges))


@st.composite
def graph_and_proper_subset(draw, min_nodes: int = 2, max_nodes: int = 8):
    g = draw(connected_graphs(min_nodes, max_nodes))
    s = draw(
        st.sets(st.integers(0, g.n - 1), min_size=1, max_size=g.n - 1)
    )
    return g, frozenset(s)


# -- acceptance criteria summary --------------------------------------------

ACCEPTANCE_LINES: dict[int, str] = {}


def record_criterion(num: int, desc: str, elapsed: float, budget: float) -> None:
    """Called by an acceptance test after all its assertions held."""
    ACCEPTANCE_LINES[num] = (
        f"CRITERION {num} PASS ({elapsed:.1f}s / {budget:.0f}s budget) {desc}"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    match = re.match(r"test_criterion_(\d+)", item.name)
    if match and rep.when == "call" and rep.failed:
        num = int(match.group(1))
        ACCEPTANCE_LINES[num] = f"CRITERION {num} FAIL see {item.nodeid}"


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[num])
