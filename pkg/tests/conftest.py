import pytest

from boxcomplex.graph_core import generate, small_connected_graphs

ACCEPTANCE: dict[str, tuple[bool, str]] = {}


@pytest.fixture(scope="session")
def small_graphs():
    """All 142 connected graphs on 2..6 nodes."""
    return small_connected_graphs(6)


@pytest.fixture(scope="session")
def named_graphs():
    return [generate(f) for f in ("petersen", "complete-bipartite:3,3", "complete:6")]


@pytest.fixture(scope="session")
def corpus(small_graphs, named_graphs):
    return small_graphs + named_graphs


@pytest.fixture
def criterion(request):
    """Record an acceptance verdict; the summary is printed at the end of the run."""

    def record(name: str, ok: bool, detail: str = "") -> bool:
        ACCEPTANCE[name] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda s: int(s.split()[0])):
        ok, detail = ACCEPTANCE[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  ({detail})" if detail else ""))
