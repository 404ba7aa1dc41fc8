"""Write the round-trip corpus used by tests/test_corpus.py.

160 text files and 40 JSON files: catalog links, braid closures with
kinks, walked diagrams and arbitrary (non-realizable) arrow placements.
Rerunning with the same seed reproduces the files byte for byte.
"""
import argparse
import json
import random
from pathlib import Path

from gaussmilnor.diagram import GaussDiagram, Token, serialize, to_json
from gaussmilnor.links import catalog, random_link_diagram, shipped_catalog
from gaussmilnor.moves import random_walk


def arbitrary(rng: random.Random, n_arrows: int, n_components: int) -> GaussDiagram:
    comps = [[] for _ in range(n_components)]
    for label in range(1, n_arrows + 1):
        sign = rng.choice((1, -1))
        for over in (True, False):
            c = rng.randrange(n_components)
            comps[c].insert(rng.randint(0, len(comps[c])), Token(label, over, sign))
    return GaussDiagram(tuple(tuple(c) for c in comps))


def corpus(seed: int, size: int = 200):
    rng = random.Random(seed)
    named = [n for n, e in shipped_catalog().items() if e.available]
    for i in range(size):
        kind = ("catalog", "braid", "walked", "arbitrary")[i % 4]
        if kind == "catalog":
            G = catalog(named[(i // 4) % len(named)])
        elif kind == "braid":
            G = random_link_diagram(3, rng.randint(0, 30), rng.getrandbits(32), rng.choice(("trivial", "spliced")))
        elif kind == "walked":
            G = random_link_diagram(3, rng.randint(0, 12), rng.getrandbits(32), "spliced")
            G = random_walk(G, rng.randint(1, 40), rng.getrandbits(32), max_crossings=30)[-1]
        else:
            G = arbitrary(rng, rng.randint(0, 20), rng.randint(1, 5))
        yield i, kind, G


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "tests" / "corpus")
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for i, kind, G in corpus(args.seed):
        stem = args.out / f"{i:03d}_{kind}"
        if i % 5 == 4:
            stem.with_suffix(".json").write_text(json.dumps(to_json(G)) + "\n")
        else:
            stem.with_suffix(".gauss").write_text(serialize(G, canonicalize=False))
    print(f"wrote {i + 1} files to {args.out}")


if __name__ == "__main__":
    main()
