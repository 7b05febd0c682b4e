import pytest

from darboux import GeneratorSpec, make_algebra


@pytest.fixture
def mixed_sig():
    """Small algebra with even and odd generators in several degrees."""
    return make_algebra([
        GeneratorSpec("a", 0), GeneratorSpec("b", 0), GeneratorSpec("u", -1),
        GeneratorSpec("v", -1), GeneratorSpec("e", -2), GeneratorSpec("f", -3),
        GeneratorSpec("t", 0, invertible=True),
    ])


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(f"criterion {n}: {'PASS' if mod.RESULTS[n] else 'FAIL'}")
