import pytest

# (criterion, item, verdict, detail) lines appended by the acceptance suite
ACCEPTANCE_LINES: list[tuple[int, str, str, str]] = []


@pytest.fixture
def acceptance():
    def report(criterion: int, item: str, ok: bool, detail: str = ""):
        ACCEPTANCE_LINES.append((criterion, item, "PASS" if ok else "FAIL", detail))
        assert ok, f"criterion {criterion} [{item}]: {detail}"

    return report


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, item, verdict, detail in sorted(ACCEPTANCE_LINES, key=lambda t: t[0]):
        line = f"{verdict}  criterion {criterion}  {item}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
