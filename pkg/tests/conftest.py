from fractions import Fraction
from itertools import product

import pytest

from conevol.generator import GenSpec, canonical, generate
from conevol.polytope import convex_hull


def F(*xs):
    return tuple(Fraction(x) for x in xs)


@pytest.fixture(scope="session")
def square():
    return convex_hull(product((-1, 1), repeat=2))


@pytest.fixture(scope="session")
def triangle():
    """The centered triangle conv{(1,0), (0,1), (-1,-1)}."""
    return canonical("centered_simplex_2")


@pytest.fixture(scope="session")
def cube3():
    return canonical("cube_3")


@pytest.fixture(scope="session")
def small_corpus():
    specs = [GenSpec(n, m, 4, seed) for seed, (n, m) in enumerate([(2, 5), (2, 7), (3, 6), (3, 8), (4, 6), (3, 5)])]
    return [generate(s) for s in specs]


# one summary line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = {}


def record_criterion(num, title, ok, detail=""):
    line = f"[acceptance {num:>2}] {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES[num] = line
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for num in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[num])
