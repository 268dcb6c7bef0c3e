import pytest

ACCEPTANCE: list[str] = []


@pytest.fixture
def report():
    def add(number: int, title: str, ok: bool, detail: str):
        ACCEPTANCE.append(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})")
    return add


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
