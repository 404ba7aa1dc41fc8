import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gaussmilnor.diagram import GaussDiagram, Token, diagram
from gaussmilnor.links import catalog, random_link_diagram
from gaussmilnor.moves import random_walk

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

VENN = ("O1- U2+ O3+ U4-", "U3+ O5+ U1- O6-", "O4- U5+ O2+ U6-")


@pytest.fixture
def venn():
    return diagram(*VENN)


@pytest.fixture
def borromean():
    return catalog("borromean")


def arbitrary_diagram(seed: int, n_arrows: int, n_components: int = 3) -> GaussDiagram:
    """Any Gauss diagram at all: endpoints dropped at random, no realizability."""
    rng = random.Random(seed)
    comps: list[list[Token]] = [[] for _ in range(n_components)]
    for label in range(1, n_arrows + 1):
        sign = rng.choice((1, -1))
        for over in (True, False):
            c = rng.randrange(n_components)
            comps[c].insert(rng.randint(0, len(comps[c])), Token(label, over, sign))
    return GaussDiagram(tuple(tuple(c) for c in comps))


arbitrary_diagrams = st.builds(
    arbitrary_diagram, st.integers(0, 2**32), st.integers(0, 14)
)

# realizable: braid closures, optionally moved around afterwards (moves keep
# linking numbers balanced, which is all the invariance proofs need)
realizable_diagrams = st.builds(
    lambda seed, n, mode: random_link_diagram(3, n, seed, mode),
    st.integers(0, 2**32),
    st.integers(0, 18),
    st.sampled_from(("trivial", "spliced")),
)

moved_diagrams = st.builds(
    lambda G, seed, steps: random_walk(G, steps, seed, max_crossings=26)[-1],
    realizable_diagrams,
    st.integers(0, 2**32),
    st.integers(0, 20),
)


# acceptance verdicts, repeated at the end of the run
ACCEPTANCE: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE):
            terminalreporter.write_line(line)
