import time

import pytest

from gaussmilnor.diagram import GaussDiagram, diagram
from gaussmilnor.invariants import FACT_VECTOR, FAMILY_I, FAMILY_I_UNSIGNED, FAMILY_J
from gaussmilnor.links import catalog
from gaussmilnor.moves import base_point, r1_add, r1_remove
from gaussmilnor.patterns import CoefficientVector
from gaussmilnor.relations import (
    check_membership,
    integer_nullspace,
    rank,
    relation_row,
    sample_relations,
    variant_of,
)

RR_ID = CoefficientVector.from_dict({("RR", "123"): 1})


@pytest.fixture(scope="module")
def sampled():
    return sample_relations(seed=0, count=600)


def test_nullspace_edge_cases():
    assert len(integer_nullspace([])) == 24
    units = [tuple(int(i == j) for j in range(24)) for i in range(24)]
    assert integer_nullspace(units) == []
    assert integer_nullspace([(2, -4) + (0,) * 22])[0][:2] == (2, 1)
    assert rank([(0,) * 24]) == 0


def test_more_rows_never_grow_the_nullspace(sampled):
    rows, _ = sampled
    dims = [len(integer_nullspace(rows[:k])) for k in (0, 10, 50, 200, len(rows))]
    assert dims == sorted(dims, reverse=True)


def test_basis_vectors_annihilate_every_row(sampled):
    rows, _ = sampled
    for b in integer_nullspace(rows):
        assert all(r.annihilates(b) for r in rows)


def test_recovers_the_invariant_families(sampled):
    rows, counts = sampled
    assert sum(counts.values()) == 600
    assert counts["R3/3c"] > 0 and counts["BasePoint"] > 0
    basis = integer_nullspace(rows)
    assert check_membership(FAMILY_I, basis)
    assert check_membership(FAMILY_J, basis)
    assert not check_membership(RR_ID, basis)
    # neither the unsigned reading of family I nor the 2,2,1,1 sum is move invariant
    assert not check_membership(FAMILY_I_UNSIGNED, basis)
    assert not check_membership(FACT_VECTOR, basis)


def test_kink_rows_are_zero():
    G = catalog("borromean")
    row = relation_row(G, r1_add(0, 2, -1, True))
    assert not any(row.delta)
    assert not any(relation_row(diagram("O1+ U1+", "", ""), r1_remove(1)).delta)


def test_base_point_on_a_lonely_arrow():
    G = diagram("O1+ U2+", "U1+ O2+", "")
    row = relation_row(G, base_point(0, True))
    assert row.kind == "BasePoint" and not any(row.delta)


def test_variant_labels():
    G = catalog("borromean_venn")
    assert variant_of(G, base_point(0, True)) == "BasePoint"


def test_sampling_is_deterministic_and_fast():
    t = time.perf_counter()
    a = sample_relations(seed=3, count=100)
    b = sample_relations(seed=3, count=100)
    assert a == b
    assert time.perf_counter() - t < 10
    with pytest.raises(ValueError):
        sample_relations(0, 0)
