"""Shared test plumbing.

test_acceptance records one PASS/FAIL line per criterion here; the
terminal-summary hook prints them after the run so the lines are
visible without -s.
"""

acceptance_lines = []


def record(name: str, passed: bool, detail: str) -> bool:
    line = f"{'PASS' if passed else 'FAIL'}  {name}: {detail}"
    acceptance_lines.append(line)
    print(line)
    return passed


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if acceptance_lines:
        terminalreporter.write_sep("=", "acceptance criteria")
        for line in acceptance_lines:
            terminalreporter.write_line(line)
