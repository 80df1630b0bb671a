import pytest

_VERDICTS = []


@pytest.fixture
def verdict():
    """Record one acceptance line; returns ``ok`` so tests can assert it."""
    def report(label, ok, detail=""):
        line = f"ACCEPTANCE {label}: {'PASS' if ok else 'FAIL'}  {detail}".rstrip()
        print(line)
        _VERDICTS.append(line)
        return ok
    return report


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in _VERDICTS:
            terminalreporter.write_line(line)
