import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from distnets.corpus import random_corpus
from distnets.net import LabelledNet, validate
from distnets.textio import load_fixture

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.filter_too_much, HealthCheck.too_slow])
settings.load_profile("default")

CORPUS_SIZE = 500
CORPUS_SEED = 1
ORACLE_CORPUS_SIZE = 100
ORACLE_CORPUS_SEED = 2


@pytest.fixture
def fig():
    return load_fixture


@pytest.fixture(scope="session")
def corpus():
    return random_corpus(CORPUS_SIZE, CORPUS_SEED)


@pytest.fixture(scope="session")
def oracle_corpus():
    return random_corpus(ORACLE_CORPUS_SIZE, ORACLE_CORPUS_SEED)


@st.composite
def plain_nets(draw, max_places=5, max_transitions=5, max_arcs=12, tau=False):
    """Small nets with nonempty presets; contact-freeness is filtered by the
    caller via ``contact_free``."""
    n_p = draw(st.integers(1, max_places))
    n_t = draw(st.integers(1, max_transitions))
    places = [f"p{i}" for i in range(n_p)]
    transitions = [f"t{i}" for i in range(n_t)]
    arcs = set()
    for t in transitions:
        pre = draw(st.sets(st.sampled_from(places), min_size=1, max_size=min(3, n_p)))
        post = draw(st.sets(st.sampled_from(places), max_size=2))
        arcs |= {(p, t) for p in pre} | {(t, p) for p in post}
    arcs = sorted(arcs)[:max_arcs]
    covered = {b for a, b in arcs if b in transitions}
    transitions = [t for t in transitions if t in covered]
    arcs = [a for a in arcs if a[0] in places + transitions and a[1] in places + transitions]
    marked = draw(st.sets(st.sampled_from(places), min_size=1))
    labels = None
    if tau:
        labels = {t: draw(st.sampled_from(["tau", "a", "b", t])) for t in transitions}
    return LabelledNet(places, transitions, arcs, marked, labels)


def contact_free(net):
    return validate(net, 5000).ok


# one line per acceptance criterion, filled in by test_acceptance.py
CRITERIA = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(CRITERIA, key=lambda s: int(s.split()[1])):
            terminalreporter.write_line(line)
