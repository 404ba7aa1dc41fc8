"""Reference links, random realizable diagrams, and the independence search.

Realizable diagrams are produced as closures of braids.  A braid word is
a list of nonzero integers, ``k`` for ``sigma_k`` and ``-k`` for its
inverse.  The closure of a pure braid on ``n`` strands is an ``n``
component link, and every operation used below on words (inserting
``s s^-1``, the braid relation, concatenation of pure braids, kinks) is a
planar operation, so every generated Gauss code comes from a real link
diagram.
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Callable, Sequence

from .diagram import GaussDiagram, Token, parse_gauss_code
from .invariants import (
    Residue,
    family_I,
    family_J,
    linking_gcd,
    linking_numbers,
    milnor_mu123,
)
from .moves import apply_move, r1_add, random_walk

Braid = tuple[int, ...]


# -- braids -----------------------------------------------------------------

def braid_permutation(word: Sequence[int], strands: int) -> list[int]:
    """``perm[p]`` = top position of the strand starting at bottom position ``p``."""
    at = list(range(strands))  # at[position] = strand id
    for letter in word:
        k = abs(letter) - 1
        if not 0 <= k < strands - 1:
            raise ValueError(f"letter {letter} needs more than {strands} strands")
        at[k], at[k + 1] = at[k + 1], at[k]
    perm = [0] * strands
    for pos, s in enumerate(at):
        perm[s] = pos
    return perm


def braid_closure(word: Sequence[int], strands: int = 3) -> GaussDiagram:
    """Gauss code of the closure of ``word``."""
    at = list(range(strands))
    tokens: list[list[Token]] = [[] for _ in range(strands)]
    for n, letter in enumerate(word, start=1):
        k = abs(letter) - 1
        if not 0 <= k < strands - 1:
            raise ValueError(f"letter {letter} needs more than {strands} strands")
        left, right = at[k], at[k + 1]
        sign = 1 if letter > 0 else -1
        # the strand moving from position k to k+1 is over exactly for sigma_k
        tokens[left].append(Token(n, letter > 0, sign))
        tokens[right].append(Token(n, letter < 0, sign))
        at[k], at[k + 1] = right, left
    perm = braid_permutation(word, strands)
    components = []
    done = [False] * strands
    for start in range(strands):
        if done[start]:
            continue
        comp: list[Token] = []
        s = start
        while not done[s]:
            done[s] = True
            comp.extend(tokens[s])
            s = perm[s]
        components.append(tuple(comp))
    return GaussDiagram(tuple(components)).canonical()


def pure_generator(i: int, j: int, power: int = 1) -> Braid:
    """``A_ij^power`` on three strands (``1 <= i < j <= 3``)."""
    base = {(1, 2): (1, 1), (2, 3): (2, 2), (1, 3): (2, 1, 1, -2)}[(i, j)]
    if power < 0:
        base = tuple(-x for x in reversed(base))
    return base * abs(power)


def _free_reduce(word: list[int]) -> list[int]:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return out


# -- catalog ----------------------------------------------------------------

@dataclass(frozen=True)
class Expectation:
    quantity: str
    values: tuple[int, ...]
    modulus: int | None
    tag: str


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    code: GaussDiagram | None
    braid: Braid | None = None
    expects: tuple[Expectation, ...] = ()
    available: bool = True
    notes: tuple[str, ...] = field(default=(), compare=False)


class UnavailableLinkError(LookupError):
    pass


_EXPECT = re.compile(r"^expect:\s*(\w+)\s+([-\d ]+?)(?:\s+mod\s+(\d+))?\s+\[(\w+)\]\s*$")


def parse_catalog(text: str) -> dict[str, CatalogEntry]:
    entries: dict[str, CatalogEntry] = {}
    lines = text.split("\n")
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line.startswith("link "):
            continue
        name = line.split(None, 1)[1]
        code_lines: list[str] | None = None
        braid: Braid | None = None
        expects: list[Expectation] = []
        notes: list[str] = []
        available = True
        while i < len(lines) and lines[i].strip() != "end":
            raw = lines[i]
            s = raw.strip()
            i += 1
            if code_lines is not None and not s.startswith(("expect:", "#")):
                code_lines.append(raw)
                continue
            if s.startswith("#"):
                notes.append(s[1:].strip())
            elif s.startswith("braid:"):
                braid = tuple(int(x) for x in s[6:].split())
            elif s == "code:":
                code_lines = []
            elif s.startswith("status:"):
                available = s.split(":", 1)[1].strip() != "unavailable"
            elif s.startswith("expect:"):
                m = _EXPECT.match(s)
                if m is None:
                    raise ValueError(f"catalog {name}: bad expect line {s!r}")
                q, vals, mod, tag = m.groups()
                expects.append(
                    Expectation(q, tuple(int(v) for v in vals.split()), None if mod is None else int(mod), tag)
                )
            elif s:
                raise ValueError(f"catalog {name}: cannot parse {s!r}")
        i += 1  # skip "end"
        code = None
        if braid is not None:
            code = braid_closure(braid)
        elif code_lines is not None:
            code = parse_gauss_code("".join(line + "\n" for line in code_lines))
        entries[name] = CatalogEntry(name, code, braid, tuple(expects), available, tuple(notes))
    return entries


@lru_cache(maxsize=None)
def shipped_catalog() -> dict[str, CatalogEntry]:
    text = resources.files("gaussmilnor").joinpath("data/catalog.txt").read_text()
    return parse_catalog(text)


def catalog(name: str, *params: int) -> GaussDiagram:
    """A named link; ``unlink n``, ``hopf_unknot [sign]`` and ``chain a b [c]``
    take parameters, the rest come from the data file."""
    if name == "unlink":
        (m,) = params or (3,)
        if m < 1:
            raise ValueError("unlink needs at least one component")
        return GaussDiagram.unlink(m)
    if name == "hopf_unknot" and params:
        (sign,) = params
        if sign not in (1, -1):
            raise ValueError("hopf sign must be +1 or -1")
        return braid_closure((sign, sign))
    if name == "chain":
        if len(params) not in (2, 3):
            raise ValueError("chain takes lk12, lk23 and optionally lk13")
        a, b, c = (*params, 0)[:3]
        return braid_closure(pure_generator(1, 2, a) + pure_generator(1, 3, c) + pure_generator(2, 3, b))
    entries = shipped_catalog()
    if name not in entries:
        raise KeyError(f"unknown link {name!r}")
    entry = entries[name]
    if not entry.available:
        raise UnavailableLinkError(f"{name} is not available: its diagram was never transcribed")
    if params:
        raise ValueError(f"{name} takes no parameters")
    return entry.code


def check_expectation(G: GaussDiagram, e: Expectation) -> tuple[bool, object]:
    """Recompute one expectation; returns ``(ok, actual)``."""
    if e.quantity == "lk":
        actual = linking_numbers(G)
        return actual == e.values, actual
    if e.quantity == "familyI":
        actual = family_I(G)
        return (actual,) == e.values, actual
    if e.quantity == "familyJ":
        actual = family_J(G)
        return (actual,) == e.values, actual
    if e.quantity == "mu123":
        actual = milnor_mu123(G)
        want = Residue.of(e.values[0], e.modulus or 0)
        return actual == want, actual
    raise ValueError(f"unknown quantity {e.quantity!r}")


# -- random realizable diagrams ---------------------------------------------

def _random_r2_braid(rng: random.Random, word: list[int], strands: int) -> None:
    k = rng.randint(1, strands - 1) * rng.choice((1, -1))
    pos = rng.randint(0, len(word))
    word[pos:pos] = [k, -k]


def _random_r3_braid(rng: random.Random, word: list[int]) -> bool:
    """Apply one braid relation at a random matching window, if any."""
    spots = []
    for p in range(len(word) - 2):
        a, b, c = word[p : p + 3]
        # s_a s_b s_a = s_b s_a s_b for adjacent generators of equal sign
        if a == c and abs(abs(a) - abs(b)) == 1 and (a > 0) == (b > 0):
            spots.append(p)
    if not spots:
        return False
    p = rng.choice(spots)
    a, b, _ = word[p : p + 3]
    word[p : p + 3] = [b, a, b]
    return True


def _fill_kinks(rng: random.Random, G: GaussDiagram, count: int) -> GaussDiagram:
    for _ in range(count):
        c = rng.randrange(G.n_components)
        gap = rng.randint(0, len(G.components[c]))
        G = apply_move(G, r1_add(c, gap, rng.choice((1, -1)), rng.random() < 0.5))
    return G


SPLICE_PIECES: tuple[Braid, ...] = (
    (1, -2, 1, -2, 1, -2),
    (2, -1, 2, -1, 2, -1),
    (-1, 2, -1, 2, -1, 2),
    pure_generator(1, 2),
    pure_generator(1, 2, -1),
    pure_generator(2, 3),
    pure_generator(2, 3, -1),
    pure_generator(1, 3),
    pure_generator(1, 3, -1),
)


def random_braid(
    crossings: int, seed: int, mode: str = "trivial", strands: int = 3
) -> Braid:
    """A braid word with at most ``crossings`` letters.

    ``trivial`` grows ``s s^-1`` insertions and braid relations from the
    empty word, so the closure is an unlink.  ``spliced`` concatenates
    Borromean and pure-generator pieces first, then shuffles the same way.
    """
    rng = random.Random(seed)
    word: list[int] = []
    if mode == "spliced":
        if strands != 3:
            raise ValueError("spliced mode builds three-component links")
        pieces = list(SPLICE_PIECES)
        budget = crossings
        while True:
            fits = [p for p in pieces if len(p) <= budget]
            if not fits or rng.random() < 0.25:
                break
            piece = rng.choice(fits)
            word.extend(piece)
            budget -= len(piece)
        word = _free_reduce(word)
    elif mode != "trivial":
        raise ValueError(f"unknown mode {mode!r}")
    if strands < 2:
        return ()
    while len(word) + 2 <= crossings:
        if rng.random() < 0.6:
            _random_r2_braid(rng, word, strands)
        for _ in range(3):
            _random_r3_braid(rng, word)
        if rng.random() < 0.4:
            # cyclic rotation is conjugation: same closure up to isotopy
            cut = rng.randint(0, len(word))
            word = word[cut:] + word[:cut]
    return tuple(word)


def random_link_diagram(
    components: int = 3,
    crossings: int = 12,
    seed: int = 0,
    mode: str = "trivial",
) -> GaussDiagram:
    """A realizable diagram with exactly ``crossings`` crossings.

    The braid part is filled up with kinks (R1 additions) to reach the
    requested count.  ``trivial`` gives a diagram of the unlink.
    """
    if crossings < 0:
        raise ValueError("crossings must be nonnegative")
    if components < 1:
        raise ValueError("components must be positive")
    rng = random.Random(f"{seed}:{mode}:{components}:{crossings}")
    word = random_braid(crossings, seed, mode, strands=components) if components > 1 else ()
    if mode == "trivial" and components > 1:
        # the closure of w must be split: only accept words whose permutation is trivial
        assert braid_permutation(word, components) == list(range(components))
    G = braid_closure(word, components) if components > 1 else GaussDiagram.unlink(1)
    if G.n_components != components:
        raise AssertionError("braid closure lost a component")
    G = _fill_kinks(rng, G, crossings - G.n_crossings)
    return G.canonical()


# -- independence search ----------------------------------------------------

@dataclass(frozen=True)
class SearchHit:
    index: int
    diagram: GaussDiagram
    family_I: int
    mu123: Residue
    reverified: bool


def independence_predicate(G: GaussDiagram) -> tuple[bool, int, Residue]:
    g = linking_gcd(G)
    if g != 0:
        return False, 0, Residue(0, g)
    mu = milnor_mu123(G)
    fi = family_I(G)
    return (mu.value == 0 and fi != 0), fi, mu


def search_candidate(index: int, bound: int, seed: int) -> GaussDiagram:
    """Candidate ``index`` of the stream; independent of worker layout."""
    rng = random.Random(f"search:{seed}:{index}")
    n = rng.randint(0, bound)
    return random_link_diagram(3, n, seed=rng.getrandbits(32), mode="spliced")


def reverify(G: GaussDiagram, moves: int, seed: int, max_crossings: int) -> bool:
    walk = random_walk(G, moves, seed, max_crossings=max_crossings)
    return all(independence_predicate(H)[0] for H in walk)


def search_independent(
    bound: int,
    budget: int,
    seed: int = 0,
    reverify_moves: int = 100,
    candidate: Callable[[int, int, int], GaussDiagram] = search_candidate,
    workers: int = 1,
) -> list[SearchHit]:
    """Diagrams with linking gcd 0, triple linking number 0 and family I nonzero."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    indices = range(budget)
    if workers > 1 and budget > 0:
        from concurrent.futures import ProcessPoolExecutor

        chunks = [range(s, min(s + 2000, budget)) for s in range(0, budget, 2000)]
        with ProcessPoolExecutor(workers) as pool:
            found = pool.map(_scan_chunk, [(c.start, c.stop, bound, seed, candidate) for c in chunks])
            hits_idx = sorted(i for part in found for i in part)
    else:
        hits_idx = _scan_chunk((indices.start, indices.stop, bound, seed, candidate))
    hits = []
    for i in hits_idx:
        G = candidate(i, bound, seed)
        _, fi, mu = independence_predicate(G)
        ok = reverify(G, reverify_moves, seed=i, max_crossings=max(bound, G.n_crossings) + 10)
        hits.append(SearchHit(i, G, fi, mu, ok))
    return hits


def _scan_chunk(args) -> list[int]:
    start, stop, bound, seed, candidate = args
    return [i for i in range(start, stop) if independence_predicate(candidate(i, bound, seed))[0]]
