import math
from pathlib import Path

import pytest
from hypothesis import given, strategies as st

from gaussmilnor.diagram import S3, GaussDiagram, Permutation, diagram
from gaussmilnor.invariants import FACT_VECTOR, mu123_based
from gaussmilnor.patterns import (
    CELLS,
    FAMILIES,
    ArrowPattern,
    CoefficientVector,
    ComponentCountError,
    PatternError,
    SubdiagramSelection,
    cell_counts,
    enumerate_subdiagrams,
    eval_combination,
    family_transcriptions,
    match_pattern,
    orbit_vector,
    pairing,
    pairing_enumerated,
    pairing_table,
    parse_patterns,
    shipped_patterns,
    transcription,
)

from conftest import VENN, arbitrary_diagram, arbitrary_diagrams, moved_diagrams

FIXTURE = Path(__file__).parent / "fixtures" / "borromean_venn_pairs.txt"
RR = transcription()["RR"]
IDENT = Permutation.identity()
# the RR picture itself: i -> j -> k with the i-endpoint first on j
RR_PICTURE = ("O1+", "U1+ O2+", "U2+")


# -- enumeration --------------------------------------------------------------

def test_enumeration_sizes():
    assert list(enumerate_subdiagrams(GaussDiagram.unlink(3), 2)) == []
    G = diagram(*VENN)
    assert len(list(enumerate_subdiagrams(G, 2))) == 15
    assert list(enumerate_subdiagrams(arbitrary_diagram(1, 4), 0)) == [SubdiagramSelection(())]
    assert list(enumerate_subdiagrams(G, 7)) == []
    with pytest.raises(ValueError):
        list(enumerate_subdiagrams(G, -1))


@given(arbitrary_diagrams, st.integers(0, 3))
def test_enumeration_count_is_binomial(G, k):
    if True:
        sels = list(enumerate_subdiagrams(G, k))
        assert len(sels) == math.comb(G.n_crossings, k)
        assert len(set(sels)) == len(sels)


# -- matching -----------------------------------------------------------------

def test_rr_matches_its_own_picture():
    G = diagram(*RR_PICTURE)
    sel = SubdiagramSelection((1, 2))
    assert match_pattern(RR, sel, G, IDENT)
    assert pairing(RR, IDENT, G) == 1


def test_reversed_arrow_does_not_match():
    G = diagram("U1+", "O1+ O2+", "U2+")
    assert not match_pattern(RR, SubdiagramSelection((1, 2)), G, IDENT)


def test_sign_product_is_counted():
    G = diagram("O1-", "U1- O2-", "U2-")
    assert pairing(RR, IDENT, G) == 1
    G = diagram("O1-", "U1- O2+", "U2+")
    assert pairing(RR, IDENT, G) == -1


def test_two_circle_selection_never_matches():
    G = diagram("O1+ O2+", "U1+ U2+", "")
    for fam in FAMILIES:
        for p in S3:
            assert not match_pattern(transcription()[fam], SubdiagramSelection((1, 2)), G, p)


def test_unlink_pairs_to_zero():
    assert pairing_table(GaussDiagram.unlink(3)) == (0,) * 24


def test_wrong_component_count():
    with pytest.raises(ComponentCountError):
        pairing(RR, IDENT, diagram("O1+ U2+", "U1+ O2+"))


@given(arbitrary_diagrams)
def test_fast_and_enumerated_pairings_agree(G):
    for name in family_transcriptions():
        pats = transcription(name)
        for fam, p in CELLS:
            assert pairing(pats[fam], p, G) == pairing_enumerated(pats[fam], p, G)
    for pat in transcription("mu123").values():
        assert pairing(pat, IDENT, G) == pairing_enumerated(pat, IDENT, G)


@given(arbitrary_diagrams, st.integers(0, 2**32))
def test_pairing_ignores_labels(G, seed):
    import random

    labels = G.labels()
    shuffled = labels[:]
    random.Random(seed).shuffle(shuffled)
    H = G.relabel(dict(zip(labels, shuffled)))
    assert pairing_table(H) == pairing_table(G)


@given(arbitrary_diagrams)
def test_matches_bounded_by_six_per_selection(G):
    total = sum(abs(v) for v in cell_counts(G).values())
    assert total <= 6 * math.comb(G.n_crossings, 2)


# -- hand enumeration of the Venn Borromean code ------------------------------

def _fixture_rows():
    rows = {}
    for line in FIXTURE.read_text().splitlines():
        line = line.split("#", 1)[0].split()
        if not line:
            continue
        pair = (int(line[0]), int(line[1]))
        rows[pair] = None if line[2] == "none" else (line[2], line[3], line[4], line[5], line[6], int(line[7]))
    return rows


def test_venn_borromean_matches_hand_enumeration(venn):
    rows = _fixture_rows()
    assert len(rows) == 15
    letter = "ABC"
    for a, b in rows:
        sel = SubdiagramSelection((a, b))
        found = []
        for fam, p in CELLS:
            if match_pattern(transcription()[fam], sel, venn, p):
                found.append((fam, p))
        want = rows[(a, b)]
        if want is None:
            assert found == []
            continue
        mid, o1, d1, o2, d2, sign = want
        # translate to a family at sigma = (i, j, k) = (first outer, middle, second outer)
        sigma = Permutation(tuple(letter.index(x) + 1 for x in (o1, mid, o2)))
        fam = {("in", "out"): "RR", ("out", "in"): "LL", ("in", "in"): "RL", ("out", "out"): "LR"}[(d1, d2)]
        assert found == [(fam, sigma)]
        arrows = venn.arrows
        assert arrows[a].sign * arrows[b].sign == sign


def test_venn_borromean_totals(venn):
    assert eval_combination(FACT_VECTOR, venn) == 12
    assert mu123_based(venn) == 1


# -- coefficient vectors --------------------------------------------------------

def test_zero_vector_evaluates_to_zero(venn):
    assert eval_combination(CoefficientVector(), venn) == 0


@given(
    arbitrary_diagrams,
    st.lists(st.integers(-5, 5), min_size=24, max_size=24),
    st.lists(st.integers(-5, 5), min_size=24, max_size=24),
    st.integers(-4, 4),
)
def test_eval_is_bilinear(G, a, b, k):
    ca, cb = CoefficientVector(tuple(a)), CoefficientVector(tuple(b))
    assert eval_combination(ca + cb, G) == eval_combination(ca, G) + eval_combination(cb, G)
    assert eval_combination(ca * k, G) == k * eval_combination(ca, G)


def test_coefficient_text_round_trip():
    v = orbit_vector(2, 2, 1, 1) * 3
    assert CoefficientVector.from_text(v.to_text()) == v
    w = CoefficientVector.from_text("# comment\nRL 123 1\nLR 231 -1\n")
    assert w["RL", "123"] == 1 and w["LR", "231"] == -1 and w["RR", "123"] == 0
    with pytest.raises(ValueError, match="line 1"):
        CoefficientVector.from_text("XX 123 1\n")


def test_coefficients_must_be_integers():
    with pytest.raises(TypeError):
        CoefficientVector((0.5,) + (0,) * 23)


# -- pattern files ----------------------------------------------------------------

def test_shipped_file_has_four_transcriptions_and_mu_patterns():
    assert sorted(family_transcriptions()) == ["default", "reversed", "swap-chain", "swap-mixed"]
    assert set(shipped_patterns()["mu123"]) == {"M1", "M2", "M3"}
    for pats in shipped_patterns().values():
        for p in pats.values():
            assert p.path_shape is not None


def test_pattern_text_round_trip():
    for pat in transcription().values():
        again = parse_patterns(pat.to_text())["default"][pat.name]
        assert again == pat


@pytest.mark.parametrize(
    "text",
    [
        "pattern X\ncircle i: a\ncircle j: b\narrow a -> b\n",  # one arrow
        "pattern X\ncircle i: a b\ncircle j: c d\narrow a -> c\narrow b -> d\n",  # two circles
        "pattern X\ncircle i: a b\ncircle j: c\ncircle k: d\narrow a -> b\narrow c -> d\n",  # loop arrow
        "circle i: a\n",
    ],
)
def test_bad_patterns_are_rejected(text):
    with pytest.raises(PatternError):
        parse_patterns(text)


@given(moved_diagrams)
def test_families_agree_across_direction_variants_on_balanced_diagrams(G):
    # all four variants are move-invariant; the (2,2,1,1) vector is symmetric in them
    base = eval_combination(FACT_VECTOR, G)
    for name in family_transcriptions():
        assert eval_combination(FACT_VECTOR, G, transcription(name)) == base
