import re
from collections import defaultdict

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

_CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)([a-z]?)")


def pytest_terminal_summary(terminalreporter):
    outcomes = defaultdict(dict)
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if getattr(rep, "when", "call") != "call" and status == "passed":
                continue
            match = _CRITERION.search(rep.nodeid)
            if match:
                num, part = int(match[1]), match[2]
                outcomes[num][part or "-"] = status == "passed"
    if not outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(outcomes):
        parts = outcomes[num]
        ok = all(parts.values())
        detail = ""
        if len(parts) > 1:
            detail = " (" + ", ".join(
                f"{num}{p} {'pass' if v else 'FAIL'}" for p, v in sorted(parts.items())
            ) + ")"
        terminalreporter.write_line(f"criterion {num:2d}: {'PASS' if ok else 'FAIL'}{detail}")
