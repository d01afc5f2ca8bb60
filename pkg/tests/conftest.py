import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from vitpoly.classify import classify_catalog  # noqa: E402
from vitpoly.propagate import iterate  # noqa: E402

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}

K3_VERTEX_MAX = 32   # reaches past K + 2k^2 = 24 for the growth law
CLASSIFIED_MAX = 20


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("VITPOLY_CACHE", str(tmp_path / "cache"))


@pytest.fixture(scope="session")
def k2_catalogs():
    """Classified start-0 catalogs for two states, n = 1..20."""
    return {c.n: classify_catalog(c) for c in iterate(2, CLASSIFIED_MAX)}


@pytest.fixture(scope="session")
def k3_vertex_catalogs():
    return {c.n: c for c in iterate(3, K3_VERTEX_MAX)}


@pytest.fixture(scope="session")
def k3_catalogs(k3_vertex_catalogs):
    """Classified start-0 catalogs for three states, n = 1..20."""
    return {n: classify_catalog(c) for n, c in k3_vertex_catalogs.items() if n <= CLASSIFIED_MAX}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE_RESULTS):
        ok, detail = ACCEPTANCE_RESULTS[num]
        terminalreporter.write_line(f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}")
