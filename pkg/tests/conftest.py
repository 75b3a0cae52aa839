import json
from importlib import resources

import pytest
from hypothesis import strategies as st

from posat.family import SubsetFamily
from posat.poset import antichain, chain, linear_sum, POINT


@pytest.fixture(scope="session")
def schema():
    def load(name):
        return json.loads(resources.files("posat").joinpath(f"schemas/{name}.json").read_text())
    return load


@st.composite
def families(draw, max_n=4, max_size=None):
    n = draw(st.integers(1, max_n))
    members = draw(st.sets(st.integers(0, (1 << n) - 1), max_size=max_size))
    return SubsetFamily.of(n, members)


@st.composite
def small_posets(draw, max_size=5):
    """Linear sums of points, chains and antichains with at most max_size elements."""
    parts = draw(st.lists(st.tuples(st.sampled_from("pac"), st.integers(1, 3)), min_size=1, max_size=3))
    P = None
    for kind, k in parts:
        atom = POINT if kind == "p" else antichain(k) if kind == "a" else chain(k)
        if (P.size if P else 0) + atom.size > max_size:
            break
        P = atom if P is None else linear_sum(atom, P)
    return P if P is not None else POINT


ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    """Record and print one pass/fail line for an acceptance criterion."""
    def record(number, ok, detail=""):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE[number] = line
        print(line)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[number])
