import pytest
from hypothesis import settings

from dioquint.params import default_config

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def config():
    return default_config()


_ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record the verdict of one acceptance criterion for the summary."""

    def record(number: int, checks: list[tuple[str, bool]]):
        failed = [name for name, ok in checks if not ok]
        verdict = "PASS" if not failed else "FAIL"
        detail = "all checks hold" if not failed else "failing: " + "; ".join(failed)
        line = f"criterion {number:2d}: {verdict}  ({detail})"
        _ACCEPTANCE[number] = line
        print(line)
        assert not failed, line

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for n in sorted(_ACCEPTANCE):
            terminalreporter.write_line(_ACCEPTANCE[n])
