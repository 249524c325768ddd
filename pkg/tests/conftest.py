"""Shared pytest plumbing: replay acceptance verdict lines after capture."""


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICT_LINES
    except ImportError:
        return
    if VERDICT_LINES:
        terminalreporter.section("acceptance verdicts")
        for line in VERDICT_LINES:
            terminalreporter.write_line(line)
