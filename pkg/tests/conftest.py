"""Shared fixtures and pure-Python oracles (deliberately numpy-free)."""

import itertools

import pytest

from braceforge.brace import almost_trivial_from_group, trivial_from_group
from braceforge.families import example_params, family2_data
from braceforge.bicrossed import build_bicrossed_brace
from braceforge.groups import make_cyclic, symmetric_elements, symmetric_group


def compose(s, t):
    """(s t)(x) = s(t(x)) on tuples."""
    return tuple(s[t[x]] for x in range(len(t)))


def perm_inverse(s):
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[v] = i
    return tuple(out)


def oracle_brace_relation(dot, circle, inv):
    """First (a, b, c) violating a o (b c) = (a o b) a^-1 (a o c), by plain loops."""
    n = len(dot)
    for a, b, c in itertools.product(range(n), repeat=3):
        if circle[a][dot[b][c]] != dot[dot[circle[a][b]][inv[a]]][circle[a][c]]:
            return (a, b, c)
    return None


def oracle_star(dot, circle, inv, a, b):
    return dot[dot[inv[a]][circle[a][b]]][inv[b]]


@pytest.fixture(scope="session")
def s3():
    return symmetric_group(3)


@pytest.fixture(scope="session")
def s3_perms():
    return symmetric_elements(3)


@pytest.fixture(scope="session")
def z9():
    return make_cyclic(9)


@pytest.fixture(scope="session")
def triv_z9(z9):
    return trivial_from_group(z9)


@pytest.fixture(scope="session")
def atriv_s3(s3):
    return almost_trivial_from_group(s3)


@pytest.fixture(scope="session")
def ex1_data():
    return family2_data(example_params(1))


@pytest.fixture(scope="session")
def ex1_brace(ex1_data):
    return build_bicrossed_brace(ex1_data)


# Acceptance bookkeeping: one line per criterion, printed at the end of the run.
ACCEPTANCE: dict[int, str] = {}


@pytest.fixture
def record():
    def _record(number, passed, detail=""):
        ACCEPTANCE[number] = f"criterion {number:>2}: {'PASS' if passed else 'FAIL'}" + (f"  ({detail})" if detail else "")
        return passed
    return _record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
