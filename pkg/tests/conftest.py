"""Shared pytest hooks: a closing summary of the acceptance criteria."""


def pytest_terminal_summary(terminalreporter):
    """Print one PASS/FAIL line per acceptance criterion after the run."""
    lines = []
    for outcome in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(outcome, []):
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_criterion_" not in nodeid:
                continue
            name = nodeid.split("::", 1)[1]
            tag = name.removeprefix("test_criterion_")
            num, _, slug = tag.partition("_")
            verdict = "PASS" if outcome == "passed" else "FAIL"
            lines.append((int(num), f"criterion {int(num):2d} [{slug}]: {verdict}"))
    if not lines:
        return
    tw = terminalreporter
    tw.section("acceptance criteria")
    for _, line in sorted(lines):
        tw.write_line(line)
