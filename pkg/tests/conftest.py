import pytest

from homlab import HomSearchConfig
from homlab._kernels import compiled_kernel

BACKENDS = ["python"] + (["cython"] if compiled_kernel is not None else [])


@pytest.fixture(params=BACKENDS)
def cfg(request):
    return HomSearchConfig(backend=request.param)


def pytest_configure(config):
    config.acceptance_lines = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = getattr(config, "acceptance_lines", [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)
