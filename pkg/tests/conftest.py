import pytest

from poisson_chisq import STANDARD_GRID, MethodKind, coverage_curve

ACCEPTANCE_RESULTS = []


@pytest.fixture(scope="session")
def grid_curves():
    """{alpha: {method: CoverageCurve}} on the 0.1..75.0 grid, both levels."""
    return {
        alpha: {m: coverage_curve(m, alpha, STANDARD_GRID) for m in MethodKind}
        for alpha in (0.05, 0.01)
    }


@pytest.fixture
def record_criterion():
    def record(name, ok, detail=""):
        ACCEPTANCE_RESULTS.append((name, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"{status}  {name}" + (f"  ({detail})" if detail else ""))
