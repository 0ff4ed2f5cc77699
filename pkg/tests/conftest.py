import pytest

from opke import WeightSpec

_ACCEPTANCE = []


@pytest.fixture(params=["chebyshev", "legendre"])
def catalog_spec(request):
    return getattr(WeightSpec, request.param)()


@pytest.fixture(params=["chebyshev", "legendre", "jacobi"])
def any_catalog_spec(request):
    if request.param == "jacobi":
        return WeightSpec.jacobi(0.5, -0.3)
    return getattr(WeightSpec, request.param)()


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.keywords:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
