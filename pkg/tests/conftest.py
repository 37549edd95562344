def pytest_terminal_summary(terminalreporter):
    rows = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if rep.when != "call":
                continue
            for key, value in rep.user_properties:
                if key == "acceptance":
                    rows.append((value[0], outcome, value[1], value[2]))
    if not rows:
        return
    terminalreporter.section("acceptance criteria")
    for n, outcome, title, secs in sorted(rows):
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {mark}  ({secs:.1f}s)  {title}")
