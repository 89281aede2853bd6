import sympy
from hypothesis import HealthCheck, settings

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def sym(text):
    """Read one of our printed expressions with sympy."""
    return sympy.sympify(str(text).replace("^", "**"))


def pytest_terminal_summary(terminalreporter):
    """One pass/fail line per acceptance criterion that ran in this session."""
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
