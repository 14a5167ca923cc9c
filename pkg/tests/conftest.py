import pytest

_LINES = pytest.StashKey[list]()


def format_line(n: int, name: str, passed: bool, detail: str) -> str:
    return f"criterion {n} {'PASS' if passed else 'FAIL'}  {name}: {detail}"


@pytest.fixture
def acceptance_report(request):
    """Record one pass/fail line per acceptance criterion for the terminal summary."""
    lines = request.config.stash.setdefault(_LINES, [])

    def report(n, name, passed, detail):
        line = format_line(n, name, passed, detail)
        lines.append((n, line))
        print(line)

    return report


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(lines):
            terminalreporter.write_line(line)
