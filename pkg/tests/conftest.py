import pytest

_ACCEPTANCE: list = []


@pytest.fixture
def acceptance_log():
    """Append ``(criterion, passed, detail)``; lines are echoed and summarized at the end."""

    def log(criterion: int, passed: bool, detail: str = ""):
        line = f"criterion {criterion}: {'PASS' if passed else 'FAIL'}" + (f" ({detail})" if detail else "")
        print(line)
        _ACCEPTANCE.append(line)

    return log


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
