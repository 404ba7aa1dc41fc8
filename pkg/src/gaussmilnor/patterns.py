"""Arrow patterns and their pairing with Gauss diagrams.

A pattern is a two-arrow diagram on three circles whose roles ``i, j, k``
are bound to actual components by a permutation: role ``r`` goes to
component ``sigma(r)``.  The pairing of a pattern with a diagram is the
signed count of two-arrow subdiagrams that look like the pattern.

Two routes compute the same number.  ``pairing_enumerated`` walks all
two-arrow selections and checks them one by one.  The default route
recognises that every shipped pattern is a *path*: one circle carries both
endpoints and the others carry one each.  Such a pattern is a single
"cell" ``(middle, first outer, second outer, in?, in?)`` and all 24 cells
of a diagram can be counted in one linear sweep with running sums.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Iterable, Iterator, Mapping

from .diagram import S3, GaussDiagram, Permutation

FAMILIES: tuple[str, ...] = ("RR", "LL", "RL", "LR")
ROLES: tuple[str, ...] = ("i", "j", "k")
CELLS: tuple[tuple[str, Permutation], ...] = tuple(
    (fam, p) for fam in FAMILIES for p in S3
)
DEFAULT_TRANSCRIPTION = "default"


class PatternError(ValueError):
    pass


class ComponentCountError(ValueError):
    pass


def _need3(G: GaussDiagram) -> None:
    if G.n_components != 3:
        raise ComponentCountError(f"expected 3 components, got {G.n_components}")


# -- patterns ---------------------------------------------------------------

@dataclass(frozen=True)
class ArrowPattern:
    """Two template arrows; endpoint ids are local names."""

    name: str
    circles: tuple[tuple[str, tuple[str, ...]], ...]
    arrows: tuple[tuple[str, str], ...]

    def __post_init__(self):
        if len(self.arrows) != 2:
            raise PatternError(f"{self.name}: needs exactly 2 arrows, has {len(self.arrows)}")
        placed = [e for _, ids in self.circles for e in ids]
        if len(placed) != len(set(placed)):
            raise PatternError(f"{self.name}: an endpoint id is placed twice")
        used = [e for a in self.arrows for e in a]
        if sorted(used) != sorted(placed):
            raise PatternError(f"{self.name}: arrow endpoints and circle endpoints differ")
        roles = [r for r, _ in self.circles]
        if len(set(roles)) != len(roles) or not set(roles) <= set(ROLES):
            raise PatternError(f"{self.name}: bad circle roles {roles}")
        if {self.role_of(e) for e in placed} != set(ROLES):
            raise PatternError(f"{self.name}: the arrows must touch all three circles")
        for t, h in self.arrows:
            if self.role_of(t) == self.role_of(h):
                raise PatternError(f"{self.name}: arrow {t} -> {h} stays on one circle")

    def role_of(self, endpoint: str) -> str:
        for role, ids in self.circles:
            if endpoint in ids:
                return role
        raise KeyError(endpoint)

    def rank_of(self, endpoint: str) -> int:
        for _, ids in self.circles:
            if endpoint in ids:
                return ids.index(endpoint)
        raise KeyError(endpoint)

    @property
    def path_shape(self) -> tuple[str, str, str, bool, bool] | None:
        """``(middle, first_outer, second_outer, in1, in2)`` in roles, or None."""
        middle = [(r, ids) for r, ids in self.circles if len(ids) == 2]
        if len(middle) != 1:
            return None
        m, (e1, e2) = middle[0]
        out = []
        for e in (e1, e2):
            (t, h), = [a for a in self.arrows if e in a]
            other = h if e == t else t
            out.append((self.role_of(other), e == h))
        (o1, in1), (o2, in2) = out
        if o1 == o2:
            return None
        return (m, o1, o2, in1, in2)

    def to_text(self) -> str:
        lines = [f"pattern {self.name}"]
        lines += [f"circle {r}: {' '.join(ids)}" for r, ids in self.circles]
        lines += [f"arrow {t} -> {h}" for t, h in self.arrows]
        return "\n".join(lines) + "\n"


_CIRCLE = re.compile(r"^circle\s+(\w+)\s*:\s*(.*)$")
_ARROW = re.compile(r"^arrow\s+(\w+)\s*->\s*(\w+)$")


def parse_patterns(text: str) -> dict[str, dict[str, ArrowPattern]]:
    """Parse a pattern file into ``{transcription: {name: pattern}}``.

    Patterns before any ``transcription`` line go to ``default``.
    """
    out: dict[str, dict[str, ArrowPattern]] = {}
    current = DEFAULT_TRANSCRIPTION
    name: str | None = None
    circles: list[tuple[str, tuple[str, ...]]] = []
    arrows: list[tuple[str, str]] = []

    def flush() -> None:
        nonlocal name, circles, arrows
        if name is not None:
            group = out.setdefault(current, {})
            if name in group:
                raise PatternError(f"pattern {name} defined twice in {current}")
            group[name] = ArrowPattern(name, tuple(circles), tuple(arrows))
        name, circles, arrows = None, [], []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line or line.startswith("version"):
            continue
        if line.startswith("transcription"):
            flush()
            current = line.split(None, 1)[1].strip()
            continue
        if line.startswith("pattern"):
            flush()
            name = line.split(None, 1)[1].strip()
            continue
        if name is None:
            raise PatternError(f"line {lineno}: {line!r} outside a pattern block")
        if m := _CIRCLE.match(line):
            circles.append((m.group(1), tuple(m.group(2).split())))
        elif m := _ARROW.match(line):
            arrows.append((m.group(1), m.group(2)))
        else:
            raise PatternError(f"line {lineno}: cannot parse {line!r}")
    flush()
    return out


@lru_cache(maxsize=None)
def shipped_patterns() -> dict[str, dict[str, ArrowPattern]]:
    text = resources.files("gaussmilnor").joinpath("data/patterns.txt").read_text()
    return parse_patterns(text)


def transcription(name: str = DEFAULT_TRANSCRIPTION) -> dict[str, ArrowPattern]:
    try:
        return shipped_patterns()[name]
    except KeyError:
        raise KeyError(f"unknown transcription {name!r}; have {sorted(shipped_patterns())}") from None


def family_transcriptions() -> list[str]:
    """Names of the shipped transcriptions that define all four families."""
    return [n for n, ps in shipped_patterns().items() if set(FAMILIES) <= set(ps)]


# -- coefficient vectors ----------------------------------------------------

_CELL_INDEX = {(fam, p): n for n, (fam, p) in enumerate(CELLS)}


@dataclass(frozen=True)
class CoefficientVector:
    """24 integer coefficients indexed by (family, permutation), plus a scale."""

    entries: tuple[int, ...] = (0,) * 24
    scale: int = 1

    def __post_init__(self):
        if len(self.entries) != 24:
            raise ValueError("a coefficient vector has 24 entries")
        if not all(isinstance(e, int) for e in (*self.entries, self.scale)):
            raise TypeError("coefficients must be integers")

    @classmethod
    def from_dict(cls, d: Mapping[tuple[str, Permutation | str], int], scale: int = 1):
        v = [0] * 24
        for (fam, p), c in d.items():
            if isinstance(p, str):
                p = Permutation.from_string(p)
            v[_CELL_INDEX[(fam, p)]] += int(c)
        return cls(tuple(v), scale)

    @classmethod
    def unit(cls, family: str, perm: str | Permutation) -> "CoefficientVector":
        return cls.from_dict({(family, perm): 1})

    def __getitem__(self, key: tuple[str, Permutation | str]) -> int:
        fam, p = key
        if isinstance(p, str):
            p = Permutation.from_string(p)
        return self.entries[_CELL_INDEX[(fam, p)]]

    def scaled_entries(self) -> tuple[int, ...]:
        return tuple(self.scale * e for e in self.entries)

    def __add__(self, other: "CoefficientVector") -> "CoefficientVector":
        return CoefficientVector(
            tuple(a + b for a, b in zip(self.scaled_entries(), other.scaled_entries()))
        )

    def __neg__(self) -> "CoefficientVector":
        return CoefficientVector(self.entries, -self.scale)

    def __sub__(self, other: "CoefficientVector") -> "CoefficientVector":
        return self + (-other)

    def __mul__(self, k: int) -> "CoefficientVector":
        return CoefficientVector(self.entries, self.scale * int(k))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.scale == 0 or not any(self.entries)

    def to_text(self) -> str:
        lines = [] if self.scale == 1 else [f"scale {self.scale}"]
        for (fam, p), c in zip(CELLS, self.entries):
            if c:
                lines.append(f"{fam} {p} {c}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "CoefficientVector":
        """Lines ``family perm coeff``; an optional ``scale n`` line; ``#`` comments."""
        d: dict[tuple[str, str], int] = {}
        scale = 1
        for lineno, raw in enumerate(text.splitlines(), start=1):
            parts = raw.split("#", 1)[0].split()
            if not parts:
                continue
            try:
                if parts[0] == "scale" and len(parts) == 2:
                    scale = int(parts[1])
                    continue
                fam, perm, coeff = parts
                if fam not in FAMILIES:
                    raise ValueError(f"unknown family {fam!r}")
                key = (fam, perm)
                Permutation.from_string(perm)
                d[key] = d.get(key, 0) + int(coeff)
            except ValueError as exc:
                raise ValueError(f"coefficient file line {lineno}: {exc}") from exc
        return cls.from_dict(d, scale)


def orbit_vector(a: int, b: int, c: int, d: int) -> CoefficientVector:
    """The vector with the same coefficient on every permutation of each family."""
    return CoefficientVector.from_dict(
        {(fam, p): coeff for fam, coeff in zip(FAMILIES, (a, b, c, d)) for p in S3}
    )


# -- enumeration and matching -----------------------------------------------

@dataclass(frozen=True)
class SubdiagramSelection:
    arrows: tuple[int, ...]


def enumerate_subdiagrams(G: GaussDiagram, size: int) -> Iterator[SubdiagramSelection]:
    """All ``size``-subsets of arrows, in lexicographic label order.

    A size above the arrow count gives no selections.
    """
    if size < 0:
        raise ValueError(f"selection size must be nonnegative, got {size}")
    for combo in itertools.combinations(G.labels(), size):
        yield SubdiagramSelection(combo)


def _assign(A: ArrowPattern, arrows, binding: Permutation) -> bool:
    where: dict[str, tuple[int, int]] = {}
    for (t, h), arrow in zip(A.arrows, arrows):
        for e, actual in ((t, arrow.tail), (h, arrow.head)):
            if binding(ROLES.index(A.role_of(e)) + 1) - 1 != actual.component:
                return False
            where[e] = actual
    for _, ids in A.circles:
        positions = [where[e].position for e in ids]
        if positions != sorted(positions):
            return False
    return True


def match_pattern(
    A: ArrowPattern, sel: SubdiagramSelection, G: GaussDiagram, binding: Permutation
) -> bool:
    chosen = [G.arrows[label] for label in sel.arrows]
    if len(chosen) != len(A.arrows):
        return False
    return any(_assign(A, order, binding) for order in itertools.permutations(chosen))


def pairing_enumerated(A: ArrowPattern, binding: Permutation, G: GaussDiagram) -> int:
    """Reference route: check every two-arrow selection."""
    _need3(G)
    total = 0
    for sel in enumerate_subdiagrams(G, 2):
        if match_pattern(A, sel, G, binding):
            total += math.prod(G.arrows[x].sign for x in sel.arrows)
    return total


# -- fast cell counting ------------------------------------------------------

Cell = tuple[int, int, int, bool, bool]


def cell_counts(G: GaussDiagram) -> dict[Cell, int]:
    """Signed counts of ordered arrow pairs, keyed by concrete cell.

    Cell ``(q, p, r, d1, d2)`` counts pairs whose endpoints on component
    ``q`` come in order, the first joining ``q`` to ``p`` and the second
    joining ``q`` to ``r``; ``d = True`` when the arrow points into ``q``.
    Components are 0-based.
    """
    ends: dict[int, int] = {}
    for c, comp in enumerate(G.components):
        for tok in comp:
            ends[tok.label] = ends.get(tok.label, 0) | (1 << c)
    counts: dict[Cell, int] = {}
    for q, comp in enumerate(G.components):
        running: dict[tuple[int, bool], int] = {}
        for tok in comp:
            mask = ends[tok.label] & ~(1 << q)
            if not mask:
                continue
            other = mask.bit_length() - 1
            inward = not tok.over
            for (p, d1), acc in running.items():
                if p != other and acc:
                    key = (q, p, other, d1, inward)
                    counts[key] = counts.get(key, 0) + acc * tok.sign
            running[(other, inward)] = running.get((other, inward), 0) + tok.sign
    return counts


def concrete_cell(A: ArrowPattern, binding: Permutation) -> Cell | None:
    shape = A.path_shape
    if shape is None:
        return None
    m, o1, o2, in1, in2 = shape
    at = lambda role: binding(ROLES.index(role) + 1) - 1  # noqa: E731
    return (at(m), at(o1), at(o2), in1, in2)


def pairing(
    A: ArrowPattern,
    binding: Permutation,
    G: GaussDiagram,
    counts: Mapping[Cell, int] | None = None,
) -> int:
    """Signed count of subdiagrams of ``G`` matching ``A`` under ``binding``."""
    _need3(G)
    cell = concrete_cell(A, binding)
    if cell is None:
        return pairing_enumerated(A, binding, G)
    if counts is None:
        counts = cell_counts(G)
    return counts.get(cell, 0)


def pairing_table(
    G: GaussDiagram,
    patterns: Mapping[str, ArrowPattern] | None = None,
    counts: Mapping[Cell, int] | None = None,
) -> tuple[int, ...]:
    """The 24 raw pairings in ``CELLS`` order."""
    _need3(G)
    patterns = patterns or transcription()
    if counts is None:
        counts = cell_counts(G)
    return tuple(pairing(patterns[fam], p, G, counts) for fam, p in CELLS)


def eval_combination(
    c: CoefficientVector,
    G: GaussDiagram,
    patterns: Mapping[str, ArrowPattern] | None = None,
    table: Iterable[int] | None = None,
) -> int:
    """``scale * sum_sigma sgn(sigma) * c[fam, sigma] * <fam, sigma; G>``."""
    _need3(G)
    if table is None:
        table = pairing_table(G, patterns)
    return c.scale * sum(
        p.parity * coeff * value
        for (_, p), coeff, value in zip(CELLS, c.entries, table)
        if coeff
    )
