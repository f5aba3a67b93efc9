def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One PASS/FAIL line per acceptance criterion at the end of the run."""
    reports = []
    for key in ("passed", "failed", "error"):
        reports.extend(terminalreporter.stats.get(key, []))
    acceptance = [
        r
        for r in reports
        if getattr(r, "when", "call") == "call" and "test_acceptance.py" in r.nodeid
    ]
    if not acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for r in sorted(acceptance, key=lambda r: r.nodeid):
        name = r.nodeid.split("::")[-1]
        status = "PASS" if r.passed else "FAIL"
        terminalreporter.write_line(f"{status}  {name}")
