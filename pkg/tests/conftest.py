import pytest

from braidset.catalog import load_entry, load_entry_solution


@pytest.fixture(scope="session")
def twelve():
    return load_entry_solution("twelve")


@pytest.fixture(scope="session")
def six():
    return load_entry_solution("six")


@pytest.fixture(scope="session")
def r_exts():
    return {k: load_entry(f"ext_{k}") for k in ("r1", "r2", "r3")}


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for number in sorted(results):
            terminalreporter.write_line(results[number])
