import pytest
from hypothesis import HealthCheck, settings

from toric_cox import build_diagram, load_fixture

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def fans():
    names = ["p2", "p1", "hirzebruch-a", "ex-1.100a", "ex-1.100b", "ex-1.230", "ex-1.400a", "ex-1.400b", "ex-3.290"]
    return {n: load_fixture(n) for n in names}


@pytest.fixture(scope="session")
def diagrams(fans):
    return {n: build_diagram(f) for n, f in fans.items()}


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@pytest.fixture
def record():
    """``record(n, ok, detail)`` stores the verdict of acceptance criterion ``n``."""

    def _record(n: int, ok: bool, detail: str = "") -> None:
        ACCEPTANCE[n] = (bool(ok), detail)

    return _record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
