import pytest

from spacewb import fixtures, kernels


@pytest.fixture
def fbal():
    return fixtures.load("fbal")


@pytest.fixture
def even():
    return fixtures.load("even")


@pytest.fixture(params=kernels.available())
def backend(request):
    """Run a test once per kernel backend, restoring the default afterwards."""
    old = kernels.BACKEND
    kernels.use_backend(request.param)
    yield request.param
    kernels.use_backend(old)


CRITERIA = []


@pytest.fixture
def criterion(capsys):
    """record(n, ok, detail) prints one CRITERION line and keeps it for the summary."""
    def record(n, ok, detail=""):
        line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}" + (f" ({detail})" if detail else "")
        CRITERIA.append(line)
        with capsys.disabled():
            print("\n" + line)
    return record


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA):
            terminalreporter.write_line(line)
