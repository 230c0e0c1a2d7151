import pytest

from relweyl.root_system import build_root_system

# filled by test_acceptance.py, printed once at the end of the session
ACCEPTANCE_RESULTS = {}


@pytest.fixture(scope="session")
def rs_cache():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = build_root_system(name)
        return cache[name]

    return get


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, text = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {text}")
