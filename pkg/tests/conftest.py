from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

settings.register_profile(
    "repro", derandomize=True, deadline=None, max_examples=120,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repro")

DATA = Path(__file__).resolve().parents[1] / "src" / "modinv" / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
