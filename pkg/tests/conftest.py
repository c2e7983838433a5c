from __future__ import annotations

import random

import pytest

from stacklayout.graph import Dag

_CRITERIA: dict[int, list[tuple[str, str]]] = {}


def random_dag(rnd: random.Random, n: int, p: float) -> Dag:
    """Edges follow a hidden random permutation, so the result is acyclic."""
    perm = list(range(n))
    rnd.shuffle(perm)
    edges = [(perm[a], perm[b]) for a in range(n) for b in range(a + 1, n) if rnd.random() < p]
    return Dag(n, edges)


@pytest.fixture
def rnd() -> random.Random:
    return random.Random(20240611)


@pytest.fixture
def triangle() -> Dag:
    return Dag(3, [(0, 1), (1, 2), (0, 2)])


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _CRITERIA.setdefault(marker.args[0], []).append((item.name, report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_CRITERIA):
        results = _CRITERIA[number]
        ok = all(outcome == "passed" for _, outcome in results)
        names = ", ".join(name for name, _ in results)
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} ({names})")
