import sys


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """Replay the acceptance gate verdicts where capture cannot hide them."""
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "gate_results", None)
    if results:
        terminalreporter.section("acceptance gate")
        for line in results:
            terminalreporter.write_line(line)
