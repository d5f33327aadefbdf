"""Shared pytest plumbing: collects the per-criterion result lines from
test_acceptance.py and prints them after capture ends, so they always
appear in the terminal output."""

acceptance_lines: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if not acceptance_lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in acceptance_lines:
        terminalreporter.write_line(line)
