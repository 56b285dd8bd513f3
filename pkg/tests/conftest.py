"""Shared pytest plumbing: surface acceptance lines in the run summary."""

ACCEPT_LINES: list[str] = []


def record_accept(line: str) -> None:
    ACCEPT_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPT_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPT_LINES:
            terminalreporter.write_line(line)
