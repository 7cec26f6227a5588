import itertools

from hypothesis import settings, strategies as st

from newton_schubert.exterior import Multivector, Shape

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def shapes(max_k=4, max_n=8, min_k=1):
    return st.integers(min_k, max_k).flatmap(
        lambda k: st.builds(Shape, st.just(k), st.integers(max(k, 1), max_n)))


def multivectors(shape: Shape, max_terms=4):
    basis = list(itertools.combinations(range(1, shape.n + 1), shape.k))
    return st.dictionaries(st.sampled_from(basis), st.integers(-5, 5).filter(bool),
                           max_size=max_terms).map(lambda terms: Multivector(shape, terms))


def shape_and_vector(max_k=4, max_n=8, min_k=1, max_terms=4):
    return shapes(max_k, max_n, min_k).flatmap(
        lambda s: st.tuples(st.just(s), multivectors(s, max_terms)))


# -- acceptance report ------------------------------------------------------------

import pytest

ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(lines):
        terminalreporter.write_line(line[1])
