import pytest

from quadrupole_screw import PotentialParams, SystemParams

ACCEPTANCE_LINES = []


@pytest.fixture
def base():
    """Running example: ell = lam = m = M = 1, k = 0.5, beta = 0.5, omega = 20."""
    return SystemParams(m=1.0, M=1.0, lam=1.0, omega=20.0, k=0.5, beta=0.5)


@pytest.fixture
def pseudo():
    return PotentialParams(1.0, 1.0, 1.0)


@pytest.fixture
def acceptance_report():
    def record(criterion, ok, detail="", status=None):
        line = f"{status or ('PASS' if ok else 'FAIL')} criterion {criterion}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
