import pytest
from hypothesis import given

from gaussmilnor.diagram import GaussDiagram, diagram, disjoint_union, mirror, reverse_component
from gaussmilnor.invariants import (
    FACT_VECTOR,
    FAMILY_I,
    FAMILY_J,
    InvariantContractError,
    NonIntegralLinkingError,
    Residue,
    f_general,
    fact_quotient,
    family_I,
    family_J,
    invariants,
    linking_gcd,
    linking_number,
    linking_numbers,
    milnor_mu123,
    mu123_based,
    report,
)
from gaussmilnor.links import catalog, random_link_diagram
from gaussmilnor.magnus import magnus_mu123
from gaussmilnor.patterns import ComponentCountError

from conftest import realizable_diagrams, moved_diagrams


def test_linking_number_examples():
    assert linking_number(diagram("O1+ U2+", "U1+ O2+"), 1, 2) == 1
    assert linking_number(diagram("O1- U2-", "U1- O2-"), 1, 2) == -1
    assert linking_numbers(GaussDiagram.unlink(3)) == (0, 0, 0)
    assert linking_gcd(catalog("ring_2_4_6")) == 2
    with pytest.raises(NonIntegralLinkingError):
        linking_number(diagram("O1+", "U1+", ""), 1, 2)
    with pytest.raises(ValueError):
        linking_number(GaussDiagram.unlink(3), 2, 2)


def test_three_components_required():
    with pytest.raises(ComponentCountError):
        family_I(GaussDiagram.unlink(2))
    with pytest.raises(ComponentCountError):
        milnor_mu123(GaussDiagram.unlink(4))


def test_families_vanish_on_unlink_and_split_links():
    assert family_I(GaussDiagram.unlink(3)) == 0 and family_J(GaussDiagram.unlink(3)) == 0
    hopf = catalog("hopf_unknot")
    assert (family_I(hopf), family_J(hopf)) == (0, 0)


def test_residue():
    assert Residue.of(-1, 3) == Residue(2, 3)
    assert Residue.of(-7, 0) == Residue(-7, 0)
    assert -Residue(1, 0) == Residue(-1, 0)
    assert Residue(1, 2).to_json() == {"value": 1, "mod": 2}
    with pytest.raises(ValueError):
        Residue(5, 3)


@pytest.mark.parametrize("name", ["borromean", "borromean_venn"])
def test_borromean_triple_linking(name):
    G = catalog(name)
    assert milnor_mu123(G) == Residue(1, 0)
    # the based formula counts one subdiagram; the symmetric sum counts it twice over
    assert mu123_based(G) == 1
    assert f_general(FACT_VECTOR, G) == 12
    assert fact_quotient(G) == 2


def test_orientation_reversal_negates_mu(borromean):
    for c in range(3):
        assert milnor_mu123(reverse_component(borromean, c)) == Residue(-1, 0)


def test_mirror_flips_lk_but_not_triple_linking(borromean):
    # meridians invert under reflection; the t1*t2 coefficient sees two flips
    hopf = catalog("chain_2_3")
    assert linking_numbers(mirror(hopf)) == (-2, 0, -3)
    assert milnor_mu123(mirror(borromean)) == Residue(1, 0)
    assert magnus_mu123(mirror(borromean)) == magnus_mu123(borromean)


def test_fact_contract_breach_is_reported():
    # a lone 1-2-3 pair with nothing to balance it: f(2,2,1,1) = 2
    G = diagram("O1+ O2+", "U1+ U3+", "U2+ O3+")
    with pytest.raises((InvariantContractError, NonIntegralLinkingError)):
        milnor_mu123(G)


@given(realizable_diagrams)
def test_family_J_is_a_product_of_linking_numbers(G):
    l12, l13, l23 = linking_numbers(G)
    assert family_J(G) == l23 * (l12 - l13)
    assert family_I(G) == 0


@given(moved_diagrams)
def test_fact_divisible_and_mu_matches_magnus(G):
    assert f_general(FACT_VECTOR, G) % 6 == 0
    mu = milnor_mu123(G)
    assert mu == Residue.of(-magnus_mu123(G), linking_gcd(G))


@given(realizable_diagrams)
def test_invariants_are_label_free(G):
    ref = invariants(G)
    assert invariants(G.canonical()) == ref
    assert report(G)["mu123"] == ref["mu123"].to_json()


def test_chain_values():
    G = catalog("chain_2_3")
    assert linking_numbers(G) == (2, 0, 3)
    assert family_J(G) == 6
    assert milnor_mu123(G) == Residue(0, 1)


def test_union_with_trivial_component():
    hopf = diagram("O1+ U2+", "U1+ O2+")
    G = disjoint_union(hopf, GaussDiagram.unlink(1))
    assert report(G) == {"lk": [1, 0, 0], "familyI": 0, "familyJ": 0, "mu123": {"value": 0, "mod": 1}}


def test_family_vectors_have_the_documented_support():
    assert sum(1 for x in FAMILY_I.entries if x) == 12
    assert {x for x in FAMILY_J.entries if x} == {1, -1}
