import pytest

from approxadd import exhaustive_distribution, validate_config

# (criterion id, passed, detail) lines collected by test_acceptance.py
ACCEPTANCE_LINES: list = []


def small_configs(max_n, min_n=2):
    """Every valid (n, k, l) with min_n <= n <= max_n."""
    out = []
    for n in range(min_n, max_n + 1):
        for k in range(1, n):
            if n % k or n // k < 2:
                continue
            for l in range(1, n - k + 1):
                out.append(validate_config(n, k, l))
    return out


@pytest.fixture(scope="session")
def oracle_cache():
    cache = {}

    def get(config):
        key = (config.n, config.k, config.l)
        if key not in cache:
            cache[key] = exhaustive_distribution(config)
        return cache[key]

    return get


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
