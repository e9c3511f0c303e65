from pathlib import Path

import pytest

from guicheck.flatten import resolve_spec
from guicheck.speclang import parse_specs
from guicheck.stdlib import builtin_library
from guicheck.trace import parse_trace

FIXTURES = Path(__file__).parent / "fixtures"

_acceptance: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion n")


def pytest_runtest_makereport(item, call):
    marker = item.get_closest_marker("criterion")
    if marker is None or call.when != "call":
        return
    n, title = marker.args
    failed = call.excinfo is not None
    prev = _acceptance.get(n)
    status = "FAIL" if failed or (prev and prev[0] == "FAIL") else "PASS"
    _acceptance[n] = (status, title)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_acceptance):
        status, title = _acceptance[n]
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")


@pytest.fixture(scope="session")
def lib():
    return builtin_library()


@pytest.fixture(scope="session")
def scroll_trace():
    return parse_trace((FIXTURES / "hscroll.gtrace").read_text())


@pytest.fixture(scope="session")
def hscroll():
    return resolve_spec("HScrollbar", parse_specs((FIXTURES / "hscroll.gspec").read_text()))


def load_trace(name: str):
    return parse_trace((FIXTURES / name).read_text())
