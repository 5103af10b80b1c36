from pathlib import Path

import pytest

from mnpterm.pipeline import DATA_DIR
from mnpterm.resources import read_chunking_config, read_pattern_set, read_terminology

HERE = Path(__file__).parent
GOLDEN = HERE / "golden"

_acceptance_lines: list[str] = []


@pytest.fixture(scope="session")
def data_dir():
    return DATA_DIR


@pytest.fixture(scope="session")
def default_config():
    return read_chunking_config(DATA_DIR / "chunking.txt")


@pytest.fixture(scope="session")
def default_patterns():
    return read_pattern_set(DATA_DIR / "patterns.txt")


@pytest.fixture(scope="session")
def fixture_terms():
    return read_terminology(DATA_DIR / "terms_fixture.tsv")


@pytest.fixture
def record_criterion():
    """Register a one-line PASS/FAIL verdict for the terminal summary."""

    def record(number: int, title: str, passed: bool, detail: str = ""):
        verdict = "PASS" if passed else "FAIL"
        line = f"[{verdict}] criterion {number}: {title}"
        if detail:
            line += f" ({detail})"
        _acceptance_lines.append(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_acceptance_lines, key=lambda l: int(l.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
