import pytest

from cohom32.config import get_config, set_config

ACCEPTANCE_LINES: list = []


@pytest.fixture(scope="session", autouse=True)
def _isolated_cache(tmp_path_factory):
    """Every test session gets its own resolution cache directory."""
    prev = set_config(get_config().replace(cache_dir=tmp_path_factory.mktemp("cache")))
    yield
    set_config(prev)


@pytest.fixture
def acceptance_line():
    def record(line: str):
        ACCEPTANCE_LINES.append(line)
        print(line)

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
