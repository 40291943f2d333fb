import pytest

_ACCEPTANCE = []


@pytest.fixture
def criterion():
    """Record one acceptance line; call with (number, passed, detail)."""
    def record(number, passed, detail):
        line = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}  {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return passed
    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
