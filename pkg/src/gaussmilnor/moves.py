"""Reidemeister and base-point moves realized directly on Gauss diagrams.

Move sites are small frozen records naming crossings by label (removals,
R3) or insertion gaps (additions).  A gap ``(c, g)`` means "just before
position ``g`` of component ``c``"; ``g == len(component)`` is the end.
Local patterns never straddle a base point: two endpoints are adjacent
only when they sit at positions ``p`` and ``p + 1`` of one component.

R3 is the endpoint exchange on a triangle of arrows TM, TB, MB (top,
middle, bottom strand).  Which orders and signs form a real triangle was
read off from straight-line models of the move:

    s_TM * s_TB = (-1) ** (m + b)        s_TM * s_MB = (-1) ** (t + b)

where ``t`` is 1 when the TB crossing comes before the TM crossing on the
top strand, ``m`` is 1 when MB comes before TM on the middle strand and
``b`` is 1 when MB comes before TB on the bottom strand.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator

from .diagram import Endpoint, GaussDiagram, Token

MOVE_KINDS = ("R1_add", "R1_remove", "R2_add", "R2_remove", "R3", "BasePoint")


class StaleMoveError(ValueError):
    """The site does not describe an applicable move on this diagram."""


@dataclass(frozen=True)
class MoveSite:
    kind: str
    params: tuple

    def __str__(self) -> str:
        return f"{self.kind}{self.params}"


# -- constructors for sites ------------------------------------------------

def r1_add(component: int, gap: int, sign: int, over_first: bool) -> MoveSite:
    return MoveSite("R1_add", (component, gap, sign, over_first))


def r1_remove(label: int) -> MoveSite:
    return MoveSite("R1_remove", (label,))


def r2_add(
    over_gap: tuple[int, int],
    under_gap: tuple[int, int],
    sign: int,
    parallel: bool,
    over_first: bool = True,
) -> MoveSite:
    """Push a strand under another.  ``sign`` is the first crossing met along
    the over-strand; ``parallel`` means the under-strand meets them in the
    same order.  ``over_first`` only matters when both gaps coincide."""
    return MoveSite("R2_add", (tuple(over_gap), tuple(under_gap), sign, parallel, over_first))


def r2_remove(first: int, second: int) -> MoveSite:
    return MoveSite("R2_remove", (first, second))


def r3(tm: int, tb: int, mb: int) -> MoveSite:
    return MoveSite("R3", (tm, tb, mb))


def base_point(component: int, forward: bool) -> MoveSite:
    """``forward`` slides the base point past the first endpoint."""
    return MoveSite("BasePoint", (component, forward))


# -- local pattern checks ----------------------------------------------------

def _adjacent(e: Endpoint, f: Endpoint) -> bool:
    return e.component == f.component and abs(e.position - f.position) == 1


def _before(e: Endpoint, f: Endpoint) -> bool:
    return e.position < f.position


def r3_sign_rule(t: int, m: int, b: int) -> tuple[int, int]:
    """(s_TM*s_TB, s_TM*s_MB) for a geometric triangle with order bits t, m, b."""
    return (-1) ** (m + b), (-1) ** (t + b)


def _r3_valid(G: GaussDiagram, tm: int, tb: int, mb: int) -> bool:
    arrows = G.arrows
    if len({tm, tb, mb}) != 3 or not all(x in arrows for x in (tm, tb, mb)):
        return False
    a, b_, c = arrows[tm], arrows[tb], arrows[mb]
    if not (_adjacent(a.tail, b_.tail) and _adjacent(a.head, c.tail) and _adjacent(b_.head, c.head)):
        return False
    t = int(_before(b_.tail, a.tail))
    m = int(_before(c.tail, a.head))
    b = int(_before(c.head, b_.head))
    return (a.sign * b_.sign, a.sign * c.sign) == r3_sign_rule(t, m, b)


def _r2_valid(G: GaussDiagram, x: int, y: int) -> bool:
    arrows = G.arrows
    if x == y or x not in arrows or y not in arrows:
        return False
    a, b = arrows[x], arrows[y]
    return (
        a.sign == -b.sign
        and a.tail.component == b.tail.component
        and a.tail.position + 1 == b.tail.position
        and _adjacent(a.head, b.head)
    )


def _r1_valid(G: GaussDiagram, x: int) -> bool:
    a = G.arrows.get(x)
    return a is not None and _adjacent(a.tail, a.head)


# -- enumeration ---------------------------------------------------------------

def removal_sites(G: GaussDiagram) -> list[MoveSite]:
    """R1_remove, R2_remove and R3 sites (everything found by pattern search)."""
    sites: list[MoveSite] = []
    arrows = G.arrows
    # neighbor lookup: endpoint -> token at each side
    def neighbors(e: Endpoint) -> Iterator[tuple[Endpoint, Token]]:
        comp = G.components[e.component]
        for p in (e.position - 1, e.position + 1):
            if 0 <= p < len(comp):
                yield Endpoint(e.component, p), comp[p]

    for label in sorted(arrows):
        a = arrows[label]
        if _adjacent(a.tail, a.head):
            sites.append(r1_remove(label))
    for label in sorted(arrows):
        a = arrows[label]
        nxt = a.tail.position + 1
        comp = G.components[a.tail.component]
        if nxt < len(comp) and comp[nxt].over and _r2_valid(G, label, comp[nxt].label):
            sites.append(r2_remove(label, comp[nxt].label))
    for tb in sorted(arrows):
        b_ = arrows[tb]
        for _, ta in neighbors(b_.tail):
            if not ta.over or ta.label == tb:
                continue
            for _, tc in neighbors(b_.head):
                if tc.over or tc.label in (tb, ta.label):
                    continue
                if _r3_valid(G, ta.label, tb, tc.label):
                    sites.append(r3(ta.label, tb, tc.label))
    return sites


def _gaps(G: GaussDiagram) -> list[tuple[int, int]]:
    return [(c, g) for c, comp in enumerate(G.components) for g in range(len(comp) + 1)]


def addition_sites(G: GaussDiagram) -> Iterator[MoveSite]:
    gaps = _gaps(G)
    for c, g in gaps:
        for sign in (1, -1):
            for over_first in (True, False):
                yield r1_add(c, g, sign, over_first)
    for og in gaps:
        for ug in gaps:
            for sign in (1, -1):
                for parallel in (True, False):
                    yield r2_add(og, ug, sign, parallel, True)
                    if og == ug:
                        yield r2_add(og, ug, sign, parallel, False)


def base_point_sites(G: GaussDiagram) -> list[MoveSite]:
    return [
        base_point(c, fwd)
        for c, comp in enumerate(G.components)
        if comp
        for fwd in (True, False)
    ]


def applicable_moves(G: GaussDiagram) -> list[MoveSite]:
    return removal_sites(G) + list(addition_sites(G)) + base_point_sites(G)


# -- application -------------------------------------------------------------

def apply_move(G: GaussDiagram, site: MoveSite) -> GaussDiagram:
    handler = _APPLY.get(site.kind)
    if handler is None:
        raise StaleMoveError(f"unknown move kind {site.kind!r}")
    return handler(G, *site.params)


def _insert(comp: tuple[Token, ...], gap: int, tokens: tuple[Token, ...]) -> tuple[Token, ...]:
    return comp[:gap] + tokens + comp[gap:]


def _check_gap(G: GaussDiagram, gap: tuple[int, int]) -> None:
    c, g = gap
    if not (0 <= c < G.n_components and 0 <= g <= len(G.components[c])):
        raise StaleMoveError(f"no gap {gap}")


def _apply_r1_add(G, component, gap, sign, over_first):
    _check_gap(G, (component, gap))
    if sign not in (1, -1):
        raise StaleMoveError("sign must be +1 or -1")
    x = G.fresh_label()
    pair = (Token(x, True, sign), Token(x, False, sign))
    if not over_first:
        pair = pair[::-1]
    comps = list(G.components)
    comps[component] = _insert(comps[component], gap, pair)
    return GaussDiagram(tuple(comps))


def _delete(G: GaussDiagram, labels: set[int]) -> GaussDiagram:
    return GaussDiagram(
        tuple(tuple(t for t in comp if t.label not in labels) for comp in G.components)
    )


def _apply_r1_remove(G, label):
    if not _r1_valid(G, label):
        raise StaleMoveError(f"crossing {label} is not a removable kink")
    return _delete(G, {label})


def _apply_r2_add(G, over_gap, under_gap, sign, parallel, over_first):
    _check_gap(G, over_gap)
    _check_gap(G, under_gap)
    if sign not in (1, -1):
        raise StaleMoveError("sign must be +1 or -1")
    x = G.fresh_label()
    y = x + 1
    tails = (Token(x, True, sign), Token(y, True, -sign))
    heads = (Token(x, False, sign), Token(y, False, -sign))
    if not parallel:
        heads = heads[::-1]
    comps = list(G.components)
    (oc, og), (uc, ug) = over_gap, under_gap
    if (oc, og) == (uc, ug):
        block = tails + heads if over_first else heads + tails
        comps[oc] = _insert(comps[oc], og, block)
    elif oc == uc:
        # insert at the later gap first so the earlier index stays valid
        for c, g, toks in sorted(((oc, og, tails), (uc, ug, heads)), key=lambda t: -t[1]):
            comps[c] = _insert(comps[c], g, toks)
    else:
        comps[oc] = _insert(comps[oc], og, tails)
        comps[uc] = _insert(comps[uc], ug, heads)
    return GaussDiagram(tuple(comps))


def _apply_r2_remove(G, first, second):
    if not _r2_valid(G, first, second):
        raise StaleMoveError(f"crossings {first}, {second} do not form a bigon")
    return _delete(G, {first, second})


def _apply_r3(G, tm, tb, mb):
    if not _r3_valid(G, tm, tb, mb):
        raise StaleMoveError(f"crossings {tm}, {tb}, {mb} do not form an R3 triangle")
    arrows = G.arrows
    a, b_, c = arrows[tm], arrows[tb], arrows[mb]
    comps = [list(comp) for comp in G.components]
    for e, f in ((a.tail, b_.tail), (a.head, c.tail), (b_.head, c.head)):
        comps[e.component][e.position], comps[f.component][f.position] = (
            comps[f.component][f.position],
            comps[e.component][e.position],
        )
    return GaussDiagram(tuple(tuple(comp) for comp in comps))


def _apply_base_point(G, component, forward):
    if not (0 <= component < G.n_components) or not G.components[component]:
        raise StaleMoveError(f"component {component} has no endpoint to pass")
    comps = list(G.components)
    comp = comps[component]
    comps[component] = comp[1:] + comp[:1] if forward else comp[-1:] + comp[:-1]
    return GaussDiagram(tuple(comps))


_APPLY = {
    "R1_add": _apply_r1_add,
    "R1_remove": _apply_r1_remove,
    "R2_add": _apply_r2_add,
    "R2_remove": _apply_r2_remove,
    "R3": _apply_r3,
    "BasePoint": _apply_base_point,
}


def inverse_site(G: GaussDiagram, site: MoveSite) -> MoveSite:
    """The site on ``apply_move(G, site)`` that undoes ``site``.

    Defined for additions and base-point moves (removals lose the
    insertion data, R3 is its own inverse on the same labels)."""
    if site.kind == "R1_add":
        return r1_remove(G.fresh_label())
    if site.kind == "R2_add":
        x = G.fresh_label()
        return r2_remove(x, x + 1)
    if site.kind == "R3":
        return site
    if site.kind == "BasePoint":
        c, fwd = site.params
        return base_point(c, not fwd)
    raise ValueError(f"no recorded inverse for {site.kind}")


# -- random walks --------------------------------------------------------------

DEFAULT_MIX = {
    "R1_add": 1.0,
    "R1_remove": 1.0,
    "R2_add": 2.0,
    "R2_remove": 2.0,
    "R3": 4.0,
    "BasePoint": 2.0,
}


def random_site(
    G: GaussDiagram,
    rng: random.Random,
    max_crossings: int | None = None,
    mix: dict[str, float] | None = None,
) -> MoveSite:
    """Draw one applicable site; kinds are weighted by ``mix``, unavailable
    kinds are skipped.  Additions are drawn without enumerating all gaps."""
    mix = dict(DEFAULT_MIX if mix is None else mix)
    can_add = max_crossings is None or G.n_crossings < max_crossings
    removals = removal_sites(G)
    by_kind: dict[str, list[MoveSite]] = {}
    for s in removals:
        by_kind.setdefault(s.kind, []).append(s)
    bp = base_point_sites(G)
    available = []
    for kind, weight in mix.items():
        if weight <= 0:
            continue
        if kind in ("R1_add", "R2_add"):
            ok = can_add
        elif kind == "BasePoint":
            ok = bool(bp)
        else:
            ok = kind in by_kind
        if ok:
            available.append((kind, weight))
    if not available:
        # no crossings and additions capped at zero: a trivial base-point-free diagram
        raise ValueError("no applicable move under the given constraints")
    kinds, weights = zip(*available)
    kind = rng.choices(kinds, weights)[0]
    if kind == "R1_add":
        c, g = rng.choice(_gaps(G))
        return r1_add(c, g, rng.choice((1, -1)), rng.random() < 0.5)
    if kind == "R2_add":
        gaps = _gaps(G)
        og, ug = rng.choice(gaps), rng.choice(gaps)
        return r2_add(og, ug, rng.choice((1, -1)), rng.random() < 0.5, rng.random() < 0.5)
    if kind == "BasePoint":
        return rng.choice(bp)
    return rng.choice(by_kind[kind])


def random_walk(
    G: GaussDiagram,
    steps: int,
    seed: int,
    max_crossings: int | None = None,
    mix: dict[str, float] | None = None,
) -> list[GaussDiagram]:
    """``[G, G1, ..., G_steps]``, each one move from its predecessor."""
    rng = random.Random(seed)
    walk = [G]
    for _ in range(steps):
        walk.append(apply_move(walk[-1], random_site(walk[-1], rng, max_crossings, mix)))
    return walk


def random_walk_sites(
    G: GaussDiagram,
    steps: int,
    seed: int,
    max_crossings: int | None = None,
    mix: dict[str, float] | None = None,
) -> tuple[list[GaussDiagram], list[MoveSite]]:
    """Same walk as :func:`random_walk`, also returning the sites used."""
    rng = random.Random(seed)
    walk, sites = [G], []
    for _ in range(steps):
        s = random_site(walk[-1], rng, max_crossings, mix)
        sites.append(s)
        walk.append(apply_move(walk[-1], s))
    return walk, sites
