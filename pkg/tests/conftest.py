import pytest

from lvmbkit.config_model import LVMBConfig, SubspaceFamily
from lvmbkit.linalg_exact import ExactMatrix


def make_cfg(lam_rows, excluded, permutation=None):
    lam = ExactMatrix(lam_rows)
    return LVMBConfig(lam.ncols, lam.nrows, lam, SubspaceFamily(tuple(map(frozenset, excluded))),
                      permutation)


@pytest.fixture
def cfg_a():
    """n=4, m=1, Lambda=(1,2,3,0), E = <{4}, {1,2,3}>."""
    return make_cfg([[1, 2, 3, 0]], [[4], [1, 2, 3]])


@pytest.fixture
def cfg_b():
    """Same Lambda, E = <{1}, {2}, {3}>: k = 3 > m + 1."""
    return make_cfg([[1, 2, 3, 0]], [[1], [2], [3]])


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in rep.nodeid and rep.when == "call":
                lines.append((rep.nodeid.split("::")[-1], outcome))
    if lines:
        terminalreporter.section("acceptance criteria")
        for name, outcome in sorted(lines):
            terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
