"""Harvest linear constraints from move pairs and solve them exactly.

For a move ``G -> G'`` the row holds ``sgn(sigma) * (<fam,sigma; G'> -
<fam,sigma; G>)`` for the 24 cells, so a coefficient vector ``c`` gives the
same value on both diagrams iff ``row . c == 0``.  The nullspace of all
sampled rows is the space of coefficient vectors that no sampled move can
tell apart.  It is evidence, not proof: more samples can only shrink it.
"""
from __future__ import annotations

import math
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .diagram import GaussDiagram
from .links import random_link_diagram
from .moves import MoveSite, apply_move, random_site, random_walk
from .patterns import CELLS, CoefficientVector, pairing_table

DEFAULT_SAMPLE_MIX = {
    "R1_add": 1.0,
    "R1_remove": 1.0,
    "R2_add": 1.0,
    "R2_remove": 1.0,
    "R3": 4.0,
    "BasePoint": 3.0,
}


@dataclass(frozen=True)
class RelationRow:
    kind: str
    variant: str
    delta: tuple[int, ...]

    def annihilates(self, c: Sequence[int] | CoefficientVector) -> bool:
        v = c.scaled_entries() if isinstance(c, CoefficientVector) else c
        return sum(a * b for a, b in zip(self.delta, v)) == 0


def _signed_delta(G: GaussDiagram, H: GaussDiagram, patterns=None) -> tuple[int, ...]:
    before = pairing_table(G, patterns)
    after = pairing_table(H, patterns)
    return tuple(p.parity * (b - a) for (_, p), a, b in zip(CELLS, before, after))


def variant_of(G: GaussDiagram, site: MoveSite) -> str:
    """A short label for the site, e.g. ``R3/3c`` for a triangle on three components."""
    if site.kind == "R3":
        comps = {
            c for label in site.params for c in (G.arrows[label].tail.component, G.arrows[label].head.component)
        }
        return f"R3/{len(comps)}c"
    if site.kind in ("R2_add", "R2_remove"):
        return site.kind
    return site.kind


def relation_row(G: GaussDiagram, site: MoveSite, patterns=None) -> RelationRow:
    H = apply_move(G, site)
    return RelationRow(site.kind, variant_of(G, site), _signed_delta(G, H, patterns))


def _corpus_diagram(rng: random.Random) -> GaussDiagram:
    mode = rng.choice(("trivial", "spliced", "spliced"))
    G = random_link_diagram(3, rng.randint(4, 16), seed=rng.getrandbits(32), mode=mode)
    # a few moves to leave braid-closure form
    return random_walk(G, rng.randint(0, 8), seed=rng.getrandbits(32), max_crossings=22)[-1]


def sample_relations(
    seed: int,
    count: int,
    mix: Mapping[str, float] | None = None,
    patterns=None,
) -> tuple[list[RelationRow], Counter]:
    """Sample ``count`` move pairs; returns deduplicated rows and per-variant counts
    of the sampled pairs (before deduplication)."""
    if count < 1:
        raise ValueError("count must be positive")
    mix = dict(DEFAULT_SAMPLE_MIX if mix is None else mix)
    rng = random.Random(seed)
    kinds = [k for k, w in mix.items() if w > 0]
    weights = [mix[k] for k in kinds]
    rows: dict[tuple, RelationRow] = {}
    counts: Counter = Counter()
    sampled = 0
    while sampled < count:
        G = _corpus_diagram(rng)
        kind = rng.choices(kinds, weights)[0]
        try:
            site = random_site(G, rng, max_crossings=30, mix={kind: 1.0})
        except ValueError:
            continue
        if kind == "R3":
            # prefer triangles that span three components when there are some
            tri3 = [s for s in _r3_sites(G) if variant_of(G, s) == "R3/3c"]
            if tri3 and rng.random() < 0.75:
                site = rng.choice(tri3)
        row = relation_row(G, site, patterns)
        counts[row.variant] += 1
        sampled += 1
        rows.setdefault((row.variant, row.delta), row)
    return list(rows.values()), counts


def _r3_sites(G: GaussDiagram) -> list[MoveSite]:
    from .moves import removal_sites

    return [s for s in removal_sites(G) if s.kind == "R3"]


# -- exact linear algebra ---------------------------------------------------

def _rref(rows: Iterable[Sequence[int]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    M = [[Fraction(x) for x in r] for r in rows if any(r)]
    pivots: list[int] = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(M)) if M[i][col] != 0), None)
        if pivot is None:
            continue
        M[r], M[pivot] = M[pivot], M[r]
        lead = M[r][col]
        M[r] = [x / lead for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def _primitive(v: Sequence[Fraction]) -> tuple[int, ...]:
    lcm = math.lcm(*(x.denominator for x in v))
    ints = [int(x * lcm) for x in v]
    g = math.gcd(*ints) or 1
    first = next((x for x in ints if x), 1)
    s = 1 if first > 0 else -1
    return tuple(s * x // g for x in ints)


def rank(rows: Iterable[Sequence[int]], ncols: int = 24) -> int:
    return len(_rref(rows, ncols)[1])


def integer_nullspace(
    rows: Iterable[RelationRow | Sequence[int]], ncols: int = 24
) -> list[tuple[int, ...]]:
    """Primitive integer basis of ``{c : row . c = 0 for every row}``."""
    vecs = [r.delta if isinstance(r, RelationRow) else tuple(r) for r in rows]
    R, pivots = _rref(vecs, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, pivots):
            v[p] = -row[f]
        basis.append(_primitive(v))
    return basis


def check_membership(c: CoefficientVector | Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    v = tuple(c.scaled_entries()) if isinstance(c, CoefficientVector) else tuple(c)
    if not any(v):
        return True
    ncols = len(v)
    return rank(list(basis) + [v], ncols) == rank(basis, ncols)


def basis_to_text(basis: Sequence[Sequence[int]]) -> str:
    """Basis vectors in the coefficient-file format, blank-line separated."""
    return "\n".join(CoefficientVector(tuple(b)).to_text() for b in basis)
