import pytest
from hypothesis import settings

settings.register_profile("ci", max_examples=150, deadline=None)
settings.load_profile("ci")


@pytest.fixture
def F2():
    from monocubic.ff_arith import field_for
    return field_for(2)


@pytest.fixture
def F5():
    from monocubic.ff_arith import field_for
    return field_for(5)


def pytest_configure(config):
    config.acceptance_lines = []


@pytest.fixture
def criterion(request):
    """Record one acceptance line; the test then asserts the same outcome."""

    def record(number, ok, detail):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number:>2}: {detail}"
        request.config.acceptance_lines.append((number, line))
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter, config):
    if config.acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(config.acceptance_lines):
            terminalreporter.write_line(line)
