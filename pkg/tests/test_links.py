import pytest
from hypothesis import given, strategies as st

from gaussmilnor.diagram import GaussDiagram
from gaussmilnor.invariants import invariants, linking_numbers, milnor_mu123, Residue
from gaussmilnor.links import (
    UnavailableLinkError,
    braid_closure,
    braid_permutation,
    catalog,
    check_expectation,
    independence_predicate,
    parse_catalog,
    pure_generator,
    random_braid,
    random_link_diagram,
    search_candidate,
    search_independent,
    shipped_catalog,
)
from gaussmilnor.magnus import magnus_mu123


def test_every_catalog_expectation_holds():
    entries = shipped_catalog()
    checked = 0
    for name, entry in entries.items():
        if not entry.available:
            continue
        G = catalog(name)
        for e in entry.expects:
            ok, got = check_expectation(G, e)
            assert ok, (name, e, got)
            checked += 1
    assert checked >= 20


def test_catalog_triple_linking_agrees_with_magnus():
    for name, entry in shipped_catalog().items():
        if entry.available:
            G = catalog(name)
            mu = milnor_mu123(G)
            assert mu == Residue.of(-magnus_mu123(G), mu.modulus)


@pytest.mark.parametrize("name", ["L2m+", "L2m-"])
def test_unavailable_families(name):
    with pytest.raises(UnavailableLinkError):
        catalog(name, 2)


def test_parameterized_entries():
    assert catalog("unlink", 4) == GaussDiagram.unlink(4)
    assert linking_numbers(catalog("hopf_unknot", -1)) == (-1, 0, 0)
    assert linking_numbers(catalog("chain", 3, -2)) == (3, 0, -2)
    assert linking_numbers(catalog("chain", 1, 2, 5)) == (1, 5, 2)
    with pytest.raises(KeyError):
        catalog("no-such-link")


def test_braid_closures():
    assert braid_closure(()) == GaussDiagram.unlink(3)
    assert braid_permutation((1,), 3) == [1, 0, 2]
    assert braid_closure((1,)).n_components == 2
    for (i, j), lk in {(1, 2): (1, 0, 0), (1, 3): (0, 1, 0), (2, 3): (0, 0, 1)}.items():
        assert linking_numbers(braid_closure(pure_generator(i, j))) == lk


def test_catalog_parser_rejects_garbage():
    with pytest.raises(ValueError):
        parse_catalog("version 1\nlink x\nbraid: 1 1\nexpect: lk nonsense\nend\n")


@given(st.integers(0, 2**32), st.integers(0, 24), st.sampled_from(("trivial", "spliced")))
def test_random_diagrams_have_the_requested_size(seed, n, mode):
    G = random_link_diagram(3, n, seed, mode)
    assert G.n_components == 3 and G.n_crossings == n
    assert G == random_link_diagram(3, n, seed, mode)
    if mode == "trivial":
        inv = invariants(G)
        assert inv["lk"] == (0, 0, 0) and inv["familyJ"] == 0 and inv["mu123"] == Residue(0, 0)


def test_random_braid_modes():
    assert len(random_braid(10, 1)) <= 10
    with pytest.raises(ValueError):
        random_braid(5, 0, mode="wild")


def test_search_degenerate_budgets():
    assert search_independent(bound=20, budget=0) == []
    with pytest.raises(ValueError):
        search_independent(bound=0, budget=5)


def test_search_candidates_are_deterministic_and_bounded():
    for i in range(50):
        G = search_candidate(i, 12, seed=1)
        assert G == search_candidate(i, 12, seed=1)
        assert G.n_crossings <= 12


def test_small_search_finds_nothing():
    # family I vanishes on realizable diagrams
    assert search_independent(bound=10, budget=200, seed=5) == []
    ok, fi, mu = independence_predicate(catalog("borromean"))
    assert not ok and fi == 0 and mu == Residue(1, 0)
