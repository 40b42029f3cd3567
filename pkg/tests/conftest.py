import os

from hypothesis import HealthCheck, settings

settings.register_profile("ci", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "ci"))


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance ledger")
    for cid in sorted(results):
        terminalreporter.write_line(results[cid].line())
    passed = sum(c.ok for c in results.values())
    terminalreporter.write_line(f"{passed}/{len(results)} criteria passed")
