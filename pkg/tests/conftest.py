import pytest

from fwlab.codes import build_defining_set, weight_table_full
from fwlab.field import build_subsets, make_field


@pytest.fixture(scope="session")
def f23():
    return make_field(2, 3)


@pytest.fixture(scope="session")
def f33():
    return make_field(3, 3)


@pytest.fixture(scope="session")
def tables23(f23):
    return build_subsets(f23)


@pytest.fixture(scope="session")
def tables33(f33):
    return build_subsets(f33)


@pytest.fixture(scope="session")
def D23(f23):
    return build_defining_set(f23)


@pytest.fixture(scope="session")
def W23(f23, D23):
    return weight_table_full(f23, D23)


@pytest.fixture(scope="session")
def D33(f33):
    return build_defining_set(f33)


@pytest.fixture(scope="session")
def W33(f33, D33):
    return weight_table_full(f33, D33)


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(results):
        ok, title, detail = results[num]
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {num:2d}. {title}: {detail}")
