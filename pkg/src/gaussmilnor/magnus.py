"""Independent route to the triple linking number through the Magnus expansion.

Wirtinger arcs are read off the Gauss code: an arc of a component runs
from one under-passage to the next.  Passing under a crossing with sign
``s`` whose over-arc has meridian ``y`` conjugates the current meridian,
``x_next = (y^s)^-1 x y^s``.  Every meridian of component ``c`` is then a
conjugate of ``x_c``; the conjugators are solved for by fixed-point
iteration in the Magnus expansion ``x_c -> 1 + t_c`` truncated at degree
two.  The longitude of the third component is the product of the
conjugating letters met along it, and the coefficient of ``t_1 t_2`` in
its expansion is the classical triple linking number (modulo the gcd of
the linking numbers).

This route shares no code with the Gauss-diagram formulas and serves as
a test oracle.  It only makes sense for diagrams of genuine links.
"""
from __future__ import annotations

from .diagram import GaussDiagram

Series = dict[tuple[int, ...], int]
DEGREE = 2


def _mul(a: Series, b: Series) -> Series:
    out: Series = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            if len(k) <= DEGREE:
                out[k] = out.get(k, 0) + va * vb
    return {k: v for k, v in out.items() if v}


def _inv(a: Series) -> Series:
    # (1 + X)^-1 = 1 - X + X^2 at degree two
    x = {k: v for k, v in a.items() if k}
    out: Series = {(): 1}
    for k, v in x.items():
        out[k] = out.get(k, 0) - v
    for k, v in _mul(x, x).items():
        out[k] = out.get(k, 0) + v
    return {k: v for k, v in out.items() if v}


def _pow(a: Series, sign: int) -> Series:
    return a if sign > 0 else _inv(a)


def _meridian(c: int) -> Series:
    return {(): 1, (c,): 1}


def magnus_mu123(G: GaussDiagram, max_iter: int = 16) -> int:
    """Coefficient of ``t_1 t_2`` in the longitude of component 3 (integer, unreduced)."""
    if G.n_components != 3:
        raise ValueError("needs 3 components")
    comps = G.components
    arc_of: list[list[int]] = []
    n_arcs: list[int] = []
    for comp in comps:
        unders = sum(1 for t in comp if not t.over)
        seen, pos_arcs = 0, []
        for t in comp:
            pos_arcs.append(seen % unders if unders else 0)
            if not t.over:
                seen += 1
        arc_of.append(pos_arcs)
        n_arcs.append(max(unders, 1))
    over_arc = {
        t.label: (c, arc_of[c][p]) for c, comp in enumerate(comps) for p, t in enumerate(comp) if t.over
    }

    arcs = {(c, r): _meridian(c) for c in range(3) for r in range(n_arcs[c])}
    for _ in range(max_iter):
        new = {}
        for c, comp in enumerate(comps):
            cur = _meridian(c)
            new[(c, 0)] = cur
            r = 0
            for t in comp:
                if t.over:
                    continue
                y = _pow(arcs[over_arc[t.label]], t.sign)
                cur = _mul(_mul(_inv(y), cur), y)
                r += 1
                if r < n_arcs[c]:
                    new[(c, r)] = cur
        if new == arcs:
            break
        arcs = new

    longitude: Series = {(): 1}
    for t in comps[2]:
        if not t.over:
            longitude = _mul(longitude, _pow(arcs[over_arc[t.label]], t.sign))
    return longitude.get((0, 1), 0)
