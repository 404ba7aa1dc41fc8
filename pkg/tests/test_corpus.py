import json
from pathlib import Path

import pytest

from gaussmilnor.diagram import parse_gauss_code, parse_json, serialize, to_json

CORPUS = sorted((Path(__file__).parent / "corpus").glob("*"))


def test_corpus_is_complete():
    assert len(CORPUS) == 200


@pytest.mark.parametrize("path", CORPUS, ids=lambda p: p.name)
def test_round_trip(path):
    text = path.read_text()
    if path.suffix == ".json":
        G = parse_json(text)
        assert parse_json(json.dumps(to_json(G))) == G
    else:
        G = parse_gauss_code(text)
        assert serialize(G, canonicalize=False) == text
    assert parse_gauss_code(serialize(G)) == G.canonical()
    assert parse_gauss_code(serialize(G, canonicalize=False)) == G
