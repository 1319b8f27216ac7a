"""Shared pytest wiring: always-visible acceptance gate summary lines."""

ACCEPTANCE_RESULTS = []


def record_acceptance(number: int, name: str, status: str, elapsed: float):
    ACCEPTANCE_RESULTS.append((number, name, status, elapsed))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance gate")
    for number, name, status, elapsed in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(
            f"criterion {number:2d} {name}: {status} ({elapsed:.1f}s)"
        )
