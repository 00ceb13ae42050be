import functools
import time

import pytest

from ptdarboux import numerix
from ptdarboux.darboux import SeedCase, make_seed, partner_pair
from ptdarboux.scarf2 import QBranch, ScarfParams, potential

GRID = numerix.DEFAULT_GRID


@functools.lru_cache(maxsize=None)
def numeric_bound(key: str):
    """Dense eigensolve on the default grid, cached across the session.

    Returns ``(operator, eigenvalues, seconds)``.
    """
    if key == "v_plus_25_5":
        pot = partner_pair(make_seed(ScarfParams(25, 5), SeedCase.CASE_I)).v_plus
    elif key == "v_minus_ia":
        pot = partner_pair(make_seed(ScarfParams(25, 5), SeedCase.CASE_I, QBranch.MINUS)).v_minus
    elif key == "v_minus_ib":
        pot = partner_pair(make_seed(ScarfParams(25, 5), SeedCase.CASE_I, QBranch.PLUS)).v_minus
    elif key == "broken_6_6.5":
        pot = _broken
    else:
        raise KeyError(key)
    op = numerix.discretize(pot, GRID)
    start = time.perf_counter()
    eigs = numerix.eigenvalues_all(op)
    return op, eigs, time.perf_counter() - start


def _broken(x):
    return potential(ScarfParams(6, 6.5), x)


@pytest.fixture(scope="session")
def solve():
    return numeric_bound


@pytest.fixture
def p25():
    return ScarfParams(25, 5)


@pytest.fixture
def seed_ia(p25):
    return make_seed(p25, SeedCase.CASE_I, QBranch.MINUS)


@pytest.fixture
def seed_ib(p25):
    return make_seed(p25, SeedCase.CASE_I, QBranch.PLUS)


@pytest.fixture
def seed_ii():
    return make_seed(ScarfParams(12.5, 12.5), SeedCase.CASE_II)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
