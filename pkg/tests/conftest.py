import os

from hypothesis import HealthCheck, settings

# fixed example streams keep the suite reproducible run to run
settings.register_profile("repro", derandomize=True, deadline=None, max_examples=40,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repro"))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None:
        mod = next((m for k, m in __import__("sys").modules.items() if k.endswith("test_acceptance")), None)
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for key in sorted(results):
            terminalreporter.write_line(results[key])
