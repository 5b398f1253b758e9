import pytest

ACCEPTANCE: list[str] = []


@pytest.fixture
def record():
    def add(n: int, ok: bool, detail: str = "") -> None:
        line = f"{'PASS' if ok else 'FAIL'} criterion {n}" + (f": {detail}" if detail else "")
        ACCEPTANCE.append(line)
        print(line)
        assert ok, line

    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE:
            terminalreporter.write_line(line)
