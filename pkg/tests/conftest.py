import pytest

ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, line = ACCEPTANCE[n]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {line}")


@pytest.fixture
def record_acceptance():
    def rec(n, ok, line):
        ACCEPTANCE[n] = (ok, line)
        print(f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {line}")

    return rec
