def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    verdicts = getattr(mod, "VERDICTS", None)
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(verdicts):
        terminalreporter.write_line(verdicts[k])
    missing = [k for k in range(1, 12) if k not in verdicts]
    for k in missing:
        terminalreporter.write_line(f"FAIL criterion {k:2d}: not run")
