import pytest

ACCEPTANCE = []


@pytest.fixture
def acceptance():
    """Record one pass/fail line per acceptance criterion."""

    def record(num, title, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] AC{num} {title}: {detail}"
        ACCEPTANCE.append((num, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
