import itertools

import pytest
from hypothesis import given, strategies as st

from gaussmilnor.diagram import (
    S3,
    GaussCodeError,
    GaussDiagram,
    Permutation,
    Token,
    diagram,
    disjoint_union,
    mirror,
    parse_gauss_code,
    parse_json,
    permute_components,
    reverse_component,
    serialize,
    to_json,
)

from conftest import VENN, arbitrary_diagrams


def test_parse_hopf_semicolon_and_newline_agree():
    a = parse_gauss_code("O1+ U2+ ; U1+ O2+")
    b = parse_gauss_code("O1+ U2+\nU1+ O2+\n")
    assert a == b
    assert a.n_components == 2 and a.n_crossings == 2


def test_blank_line_is_an_empty_component():
    G = parse_gauss_code("O1+ U2+\nU1+ O2+\n\n")
    assert G.n_components == 3
    assert G.components[2] == ()


def test_comment_lines_are_skipped():
    G = parse_gauss_code("# hopf plus circle\nO1+ U2+\n# second\nU1+ O2+\n\n")
    assert G.n_components == 3


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("O1+ U2+\nU1+ X2+\n", "line 2, column 5"),
        ("O1+ U1+ O2+\n", "dangling label 2"),
        ("O1+ O1+\n", "appears twice as O"),
        ("O1+ U1-\n", "sign mismatch"),
        ("O1+ U1+ U1+\n", "used 3 times"),
    ],
)
def test_malformed_codes_are_rejected_with_diagnostics(text, fragment):
    with pytest.raises(GaussCodeError, match=fragment):
        parse_gauss_code(text)


def test_bad_token_reports_line_and_column():
    with pytest.raises(GaussCodeError) as info:
        parse_gauss_code("O1+ U1+\n\nO2+ U2* O3+\n")
    assert (info.value.line, info.value.column) == (3, 5)


def test_json_round_trip(venn):
    import json

    assert parse_json(json.dumps(to_json(venn))) == venn
    assert parse_gauss_code(json.dumps(to_json(venn))) == venn


def test_serialize_is_canonical():
    G = parse_gauss_code("O7+ U3-\nU7+ O3-\n")
    assert serialize(G) == "O1+ U2-\nU1+ O2-\n"


@given(arbitrary_diagrams)
def test_round_trip_arbitrary(G):
    assert parse_gauss_code(serialize(G)) == G.canonical()
    assert serialize(parse_gauss_code(serialize(G))) == serialize(G)


@given(arbitrary_diagrams)
def test_canonical_is_idempotent(G):
    assert G.canonical().canonical() == G.canonical()


def test_permutation_parity_and_composition():
    assert [p.parity for p in S3] == [1, -1, -1, 1, 1, -1]
    p, q = Permutation.from_string("231"), Permutation.from_string("213")
    assert p.compose(q)(1) == p(q(1))
    assert p.compose(p.inverse()) == Permutation.identity()
    assert Permutation.from_string("123").reversed() == Permutation.from_string("321")
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


@given(arbitrary_diagrams, st.sampled_from(S3), st.sampled_from(S3))
def test_permute_components_is_a_right_action(G, p, q):
    assert permute_components(permute_components(G, p), q) == permute_components(G, p.compose(q))


def test_cyclic_relabel_of_borromean_keeps_arrow_multiset(venn):
    p = Permutation.from_string("231")
    H = permute_components(venn, p)
    new_index = {p(r) - 1: r - 1 for r in (1, 2, 3)}
    moved = sorted(
        (a.sign, new_index[a.tail.component], new_index[a.head.component]) for a in venn.arrows.values()
    )
    assert moved == sorted((a.sign, a.tail.component, a.head.component) for a in H.arrows.values())


@given(arbitrary_diagrams, st.integers(0, 2))
def test_reverse_component_is_an_involution(G, c):
    assert reverse_component(reverse_component(G, c), c) == G


def test_reverse_component_flips_only_mixed_crossings():
    G = diagram("O1+ U1+ O2+", "U2+", "")
    H = reverse_component(G, 0)
    assert H.components[0] == (Token(2, True, -1), Token(1, False, 1), Token(1, True, 1))
    assert H.arrows[2].sign == -1 and H.arrows[1].sign == 1


def test_mirror_twice_is_identity(venn):
    assert mirror(mirror(venn)) == venn
    assert all(a.sign == -b.sign for a, b in zip(mirror(venn).arrows.values(), venn.arrows.values()))


def test_disjoint_union_shifts_labels():
    H = parse_gauss_code("O1+ U2+\nU1+ O2+\n")
    U = disjoint_union(H, GaussDiagram.unlink(1))
    assert U.n_components == 3 and U.n_crossings == 2


def test_unlink_and_validation():
    assert GaussDiagram.unlink(3).n_crossings == 0
    with pytest.raises(GaussCodeError):
        GaussDiagram(())
