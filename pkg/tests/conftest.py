import pytest

from rankcodes import FieldTower, GabidulinCode, default_generator


@pytest.fixture(scope="session")
def gf16():
    return FieldTower(2, 4)


@pytest.fixture(scope="session")
def gf64():
    return FieldTower(2, 6)


@pytest.fixture(scope="session")
def gf4096():
    return FieldTower(2, 12)


@pytest.fixture(scope="session")
def gf27():
    return FieldTower(3, 3)


@pytest.fixture(scope="session")
def tiny_code(gf16):
    """[4, 2, 3] code over GF(2^4), small enough for exhaustive oracles."""
    return GabidulinCode(gf16, 2, g=default_generator(gf16))


@pytest.fixture(scope="session")
def medium_code(gf4096):
    """[12, 8, 5] code over GF(2^12), capability 2."""
    return GabidulinCode(gf4096, 8, g=default_generator(gf4096))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    """One pass/fail line per acceptance criterion."""
    rows = []
    for status in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(status, []):
            if getattr(rep, "when", "call") != "call":
                continue
            nodeid = getattr(rep, "nodeid", "")
            if "test_acceptance.py::test_c" in nodeid:
                name = nodeid.split("::", 1)[1]
                rows.append((name, "PASS" if status == "passed" else "FAIL"))
    if rows:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, verdict in sorted(rows):
            terminalreporter.write_line(f"{verdict}  {name}")
