"""Based, ordered Gauss diagrams of oriented links.

A diagram is stored the way a Gauss code reads: one tuple of tokens per
component, starting right after the base point.  Each crossing ``x``
appears twice, once as an over-passage ``O x`` and once as an
under-passage ``U x``, both carrying the crossing sign.

Arrow convention: an arrow points from the over-strand (tail, the ``O``
token) to the under-strand (head, the ``U`` token).
"""
from __future__ import annotations

import itertools
import json
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence


class GaussCodeError(ValueError):
    """Malformed or inconsistent Gauss code."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class Token(NamedTuple):
    label: int
    over: bool
    sign: int

    def __str__(self) -> str:
        return f"{'O' if self.over else 'U'}{self.label}{'+' if self.sign > 0 else '-'}"


class Endpoint(NamedTuple):
    component: int
    position: int


class Arrow(NamedTuple):
    label: int
    tail: Endpoint  # over-strand
    head: Endpoint  # under-strand
    sign: int

    @property
    def components(self) -> tuple[int, int]:
        return self.tail.component, self.head.component


@dataclass(frozen=True)
class Permutation:
    """A permutation of the circles 1..n, given by its images (sigma(1), ..., sigma(n))."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(1, len(self.images) + 1)):
            raise ValueError(f"not a permutation of 1..{len(self.images)}: {self.images}")

    @classmethod
    def from_string(cls, text: str) -> "Permutation":
        return cls(tuple(int(ch) for ch in text.strip()))

    @classmethod
    def identity(cls, n: int = 3) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @property
    def parity(self) -> int:
        inversions = sum(
            1 for a, b in itertools.combinations(self.images, 2) if a > b
        )
        return -1 if inversions % 2 else 1

    def __call__(self, r: int) -> int:
        return self.images[r - 1]

    def compose(self, other: "Permutation") -> "Permutation":
        """``(self o other)(r) = self(other(r))``."""
        return Permutation(tuple(self(other(r)) for r in range(1, len(self.images) + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * len(self.images)
        for r, image in enumerate(self.images, start=1):
            inv[image - 1] = r
        return Permutation(tuple(inv))

    def reversed(self) -> "Permutation":
        """(i, j, k) -> (k, j, i)."""
        return Permutation(self.images[::-1])

    def __str__(self) -> str:
        return "".join(map(str, self.images))


S3: tuple[Permutation, ...] = tuple(
    Permutation(p) for p in itertools.permutations((1, 2, 3))
)


@dataclass(frozen=True)
class GaussDiagram:
    """An immutable based Gauss diagram; validated on construction."""

    components: tuple[tuple[Token, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(Token(*t) for t in c) for c in self.components)
        object.__setattr__(self, "components", comps)
        _validate(comps)

    # -- derived data -----------------------------------------------------

    @cached_property
    def arrows(self) -> dict[int, Arrow]:
        ends: dict[int, dict[bool, Endpoint]] = {}
        signs: dict[int, int] = {}
        for c, comp in enumerate(self.components):
            for pos, tok in enumerate(comp):
                ends.setdefault(tok.label, {})[tok.over] = Endpoint(c, pos)
                signs[tok.label] = tok.sign
        return {
            label: Arrow(label, e[True], e[False], signs[label])
            for label, e in ends.items()
        }

    @property
    def n_components(self) -> int:
        return len(self.components)

    @property
    def n_crossings(self) -> int:
        return sum(len(c) for c in self.components) // 2

    def token_at(self, endpoint: Endpoint) -> Token:
        return self.components[endpoint.component][endpoint.position]

    def labels(self) -> list[int]:
        return sorted(self.arrows)

    # -- constructors -----------------------------------------------------

    @classmethod
    def unlink(cls, m: int) -> "GaussDiagram":
        return cls(tuple(() for _ in range(m)))

    def canonical(self) -> "GaussDiagram":
        """Relabel crossings 1..n by first occurrence in reading order."""
        mapping: dict[int, int] = {}
        for comp in self.components:
            for tok in comp:
                mapping.setdefault(tok.label, len(mapping) + 1)
        return self.relabel(mapping)

    def relabel(self, mapping: dict[int, int]) -> "GaussDiagram":
        return GaussDiagram(
            tuple(
                tuple(Token(mapping[t.label], t.over, t.sign) for t in comp)
                for comp in self.components
            )
        )

    def fresh_label(self) -> int:
        return max(self.arrows, default=0) + 1

    def __str__(self) -> str:
        return serialize(self)


def _validate(components: tuple[tuple[Token, ...], ...]) -> None:
    if len(components) < 1:
        raise GaussCodeError("a diagram needs at least one component")
    seen: dict[int, list[Token]] = {}
    for comp in components:
        for tok in comp:
            if tok.sign not in (1, -1):
                raise GaussCodeError(f"crossing {tok.label}: sign must be +1 or -1")
            seen.setdefault(tok.label, []).append(tok)
    for label, toks in seen.items():
        if len(toks) == 1:
            raise GaussCodeError(f"dangling label {label}: appears only once")
        if len(toks) != 2:
            raise GaussCodeError(f"label {label} used {len(toks)} times, expected exactly twice")
        if toks[0].over == toks[1].over:
            kind = "O" if toks[0].over else "U"
            raise GaussCodeError(f"label {label} appears twice as {kind}")
        if toks[0].sign != toks[1].sign:
            raise GaussCodeError(f"label {label}: O/U sign mismatch")


# -- text format ------------------------------------------------------------

_TOKEN = re.compile(r"^([OU])(\d+)([+-])$")


def parse_gauss_code(text: str) -> GaussDiagram:
    """Parse Gauss-code text.

    Components are separated by ``;`` or newlines; ``#`` starts a comment.
    A line holding only a comment is ignored, while a blank line is an
    empty component.  A single trailing newline does not open a component.
    """
    if text.lstrip().startswith("{"):
        return parse_json(text)
    lines = text.split("\n")
    if lines and lines[-1] == "" and len(lines) > 1:
        lines.pop()
    components: list[tuple[Token, ...]] = []
    for lineno, raw in enumerate(lines, start=1):
        code, hash_, _ = raw.partition("#")
        if hash_ and not code.strip():
            continue
        offset = 0
        for piece in code.split(";"):
            components.append(_parse_component(piece, lineno, offset))
            offset += len(piece) + 1
    return GaussDiagram(tuple(components))


def _parse_component(piece: str, lineno: int, offset: int) -> tuple[Token, ...]:
    tokens = []
    for m in re.finditer(r"\S+", piece):
        tm = _TOKEN.match(m.group())
        if tm is None:
            raise GaussCodeError(f"bad token {m.group()!r}", lineno, offset + m.start() + 1)
        kind, label, sign = tm.groups()
        tokens.append(Token(int(label), kind == "O", 1 if sign == "+" else -1))
    return tuple(tokens)


def parse_json(text: str) -> GaussDiagram:
    try:
        data = json.loads(text)
        comps = tuple(
            tuple(
                Token(int(t["label"]), {"O": True, "U": False}[t["kind"]], int(t["sign"]))
                for t in comp
            )
            for comp in data["components"]
        )
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, json.JSONDecodeError):
            raise GaussCodeError(exc.msg, exc.lineno, exc.colno) from exc
        raise GaussCodeError(f"bad JSON Gauss code: {exc}") from exc
    return GaussDiagram(comps)


def serialize(G: GaussDiagram, canonicalize: bool = True) -> str:
    """One line per component, crossings relabeled by first occurrence."""
    if canonicalize:
        G = G.canonical()
    return "".join(" ".join(map(str, comp)) + "\n" for comp in G.components)


def to_json(G: GaussDiagram) -> dict:
    return {
        "components": [
            [{"kind": "O" if t.over else "U", "label": t.label, "sign": t.sign} for t in comp]
            for comp in G.components
        ]
    }


def diagram(*components: str | Sequence[Token]) -> GaussDiagram:
    """Shorthand: ``diagram("O1+ U2+", "U1+ O2+")``."""
    text = "\n".join(c if isinstance(c, str) else " ".join(map(str, c)) for c in components)
    return parse_gauss_code(text + "\n")


def permute_components(G: GaussDiagram, p: Permutation) -> GaussDiagram:
    """Reorder components so that new circle ``r`` is old circle ``p(r)``.

    This is a right action: permuting by ``p`` then ``q`` equals permuting
    by ``p.compose(q)``.
    """
    if G.n_components != 3 or len(p.images) != 3:
        raise ValueError(f"permute_components needs 3 components, got {G.n_components}")
    return GaussDiagram(tuple(G.components[p(r) - 1] for r in (1, 2, 3)))


def reverse_component(G: GaussDiagram, c: int) -> GaussDiagram:
    """Reverse the orientation of component ``c``.

    Every crossing involving ``c`` with another component flips sign;
    self-crossings of ``c`` keep their sign (both strands reverse).
    The base point stays put, so the token order is simply reversed.
    """
    flip = {
        a.label
        for a in G.arrows.values()
        if (a.tail.component == c) != (a.head.component == c)
    }
    comps = []
    for i, comp in enumerate(G.components):
        toks = tuple(
            Token(t.label, t.over, -t.sign if t.label in flip else t.sign) for t in comp
        )
        comps.append(toks[::-1] if i == c else toks)
    return GaussDiagram(tuple(comps))


def mirror(G: GaussDiagram) -> GaussDiagram:
    """Mirror image: every crossing changes over/under and sign."""
    return GaussDiagram(
        tuple(tuple(Token(t.label, not t.over, -t.sign) for t in comp) for comp in G.components)
    )


def disjoint_union(*diagrams: GaussDiagram) -> GaussDiagram:
    comps: list[tuple[Token, ...]] = []
    shift = 0
    for D in diagrams:
        comps.extend(
            tuple(Token(t.label + shift, t.over, t.sign) for t in comp) for comp in D.components
        )
        shift += D.fresh_label()
    return GaussDiagram(tuple(comps))


def iter_tokens(G: GaussDiagram) -> Iterable[tuple[int, int, Token]]:
    for c, comp in enumerate(G.components):
        for pos, tok in enumerate(comp):
            yield c, pos, tok
