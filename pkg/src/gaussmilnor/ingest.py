"""Gauss diagrams from 3D closed polylines and from PD codes.

Projection is orthogonal along a view direction ``u``; the viewer sits at
``+u`` so the strand with the larger ``p . u`` passes over.  The image
plane uses a frame ``(e1, e2)`` with ``e1 x e2 = u``, which makes the
usual right-handed crossing positive.

Degenerate projections (near-parallel crossing segments, crossings at
vertices, depth ties, two crossings at one point of a segment) are never
tie-broken; the direction is perturbed and the projection retried.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .diagram import GaussDiagram, Token


class ProjectionError(RuntimeError):
    pass


class DegenerateProjection(Exception):
    pass


@dataclass(frozen=True)
class Polyline3:
    """Closed loops; the last point connects back to the first."""

    loops: tuple[np.ndarray, ...]

    def __init__(self, loops: Sequence[Sequence[Sequence[float]]]):
        arrs = tuple(np.asarray(loop, dtype=float).reshape(-1, 3) for loop in loops)
        for i, a in enumerate(arrs):
            if len(a) < 3:
                raise ValueError(f"loop {i} has {len(a)} points, needs at least 3")
            if np.any(np.all(a == np.roll(a, -1, axis=0), axis=1)):
                raise ValueError(f"loop {i} repeats a point consecutively")
        object.__setattr__(self, "loops", arrs)


def _frame(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    u = u / np.linalg.norm(u)
    helper = np.array([1.0, 0.0, 0.0]) if abs(u[0]) < 0.9 else np.array([0.0, 1.0, 0.0])
    e1 = np.cross(helper, u)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(u, e1)
    return e1, e2


def _project_once(poly: Polyline3, u: np.ndarray, eps: float) -> GaussDiagram:
    u = u / np.linalg.norm(u)
    e1, e2 = _frame(u)
    scale = max(float(np.abs(np.concatenate(poly.loops)).max()), 1.0)
    tol = eps * scale

    segs = []  # (component, index, start2d, dir2d, depth0, depth1)
    for c, loop in enumerate(poly.loops):
        nxt = np.roll(loop, -1, axis=0)
        P = np.stack([loop @ e1, loop @ e2], axis=1)
        Q = np.stack([nxt @ e1, nxt @ e2], axis=1)
        for i in range(len(loop)):
            segs.append((c, i, P[i], Q[i] - P[i], loop[i] @ u, nxt[i] @ u))
    n_loop = [len(loop) for loop in poly.loops]

    comp = np.array([s[0] for s in segs])
    idx = np.array([s[1] for s in segs])
    A = np.array([s[2] for s in segs])
    D = np.array([s[3] for s in segs])
    Z0 = np.array([s[4] for s in segs])
    Z1 = np.array([s[5] for s in segs])

    # events[c] -> list of (parameter along loop, label, over, sign)
    events: dict[int, list[tuple[float, int, bool, int]]] = {c: [] for c in range(len(poly.loops))}
    label = 0
    n = len(segs)
    for s in range(n):
        o = np.arange(s + 1, n)
        denom = D[s, 0] * D[o, 1] - D[s, 1] * D[o, 0]
        w = A[o] - A[s]
        t = (w[:, 0] * D[o, 1] - w[:, 1] * D[o, 0])
        v = (w[:, 0] * D[s, 1] - w[:, 1] * D[s, 0])
        lens = np.linalg.norm(D[s]) * np.linalg.norm(D[o], axis=1)
        same = comp[o] == comp[s]
        adjacent = same & (
            ((idx[o] - idx[s]) % np.array(n_loop)[comp[s]] == 1)
            | ((idx[s] - idx[o]) % np.array(n_loop)[comp[s]] == 1)
        )
        with np.errstate(divide="ignore", invalid="ignore"):
            ts = t / denom
            vs = v / denom
        parallel = np.abs(denom) <= eps * lens
        # a collinear overlap or a near-parallel pair close enough to touch is degenerate
        if np.any(parallel & ~adjacent):
            for k in np.nonzero(parallel & ~adjacent)[0]:
                dist = abs(w[k, 0] * D[s, 1] - w[k, 1] * D[s, 0]) / np.linalg.norm(D[s])
                if dist > tol:
                    continue
                # collinear: degenerate only if the parameter intervals meet
                dd = float(D[s] @ D[s])
                lo = float(w[k] @ D[s]) / dd
                hi = float((w[k] + D[o[k]]) @ D[s]) / dd
                if max(lo, hi) >= -eps and min(lo, hi) <= 1 + eps:
                    raise DegenerateProjection("overlapping parallel segments")
        hit = ~parallel & (ts > -eps) & (ts < 1 + eps) & (vs > -eps) & (vs < 1 + eps)
        if adjacent.any():
            hit &= ~adjacent
        for k in np.nonzero(hit)[0]:
            ts_k, vs_k = float(ts[k]), float(vs[k])
            if min(ts_k, 1 - ts_k, vs_k, 1 - vs_k) <= eps:
                raise DegenerateProjection("crossing at a vertex")
            o_k = int(o[k])
            zs = Z0[s] + ts_k * (Z1[s] - Z0[s])
            zo = Z0[o_k] + vs_k * (Z1[o_k] - Z0[o_k])
            if abs(zs - zo) <= tol:
                raise DegenerateProjection("depth tie")
            label += 1
            s_over = zs > zo
            d_over, d_under = (D[s], D[o_k]) if s_over else (D[o_k], D[s])
            sign = 1 if d_over[0] * d_under[1] - d_over[1] * d_under[0] > 0 else -1
            events[int(comp[s])].append((idx[s] + ts_k, label, bool(s_over), sign))
            events[int(comp[o_k])].append((idx[o_k] + vs_k, label, not s_over, sign))

    components = []
    for c in range(len(poly.loops)):
        ev = sorted(events[c])
        for (p1, *_), (p2, *_) in zip(ev, ev[1:]):
            if p2 - p1 <= eps:
                raise DegenerateProjection("two crossings at one point")
        components.append(tuple(Token(lbl, over, sign) for _, lbl, over, sign in ev))
    return GaussDiagram(tuple(components))


def project(
    poly: Polyline3,
    direction: Sequence[float] | None = None,
    seed: int = 0,
    eps: float = 1e-9,
    max_retries: int = 32,
) -> GaussDiagram:
    """Gauss diagram of the projection of ``poly`` along ``direction``.

    Without a direction a seeded random one is used.  Degenerate views are
    retried with seeded perturbations of growing size.
    """
    rng = np.random.default_rng(seed)
    if direction is None:
        u = rng.normal(size=3)
    else:
        u = np.asarray(direction, dtype=float)
    if not np.linalg.norm(u) > 0:
        raise ValueError("direction must be nonzero")
    u = u / np.linalg.norm(u)
    for attempt in range(max_retries + 1):
        try:
            return _project_once(poly, u, eps).canonical()
        except DegenerateProjection:
            u = u + rng.normal(size=3) * 1e-3 * (2 ** min(attempt, 10))
            u = u / np.linalg.norm(u)
    raise ProjectionError(f"no generic projection found after {max_retries} retries")


# -- sample geometry ----------------------------------------------------------

def _ellipse(a: np.ndarray, b: np.ndarray, samples: int, center=(0.0, 0.0, 0.0)) -> np.ndarray:
    t = np.linspace(0.0, 2 * np.pi, samples, endpoint=False)[:, None]
    return np.asarray(center) + np.cos(t) * a + np.sin(t) * b


def borromean_ellipses(samples: int = 48) -> Polyline3:
    """Three mutually perpendicular 2:1 ellipses."""
    e = np.eye(3)
    return Polyline3([_ellipse(2 * e[i], e[(i + 1) % 3], samples) for i in range(3)])


def split_rings(samples: int = 32) -> Polyline3:
    """Three round circles far apart from each other."""
    e = np.eye(3)
    return Polyline3([_ellipse(e[0], e[1], samples, (5.0 * i, 0.3 * i, 0.1 * i)) for i in range(3)])


# -- file formats -------------------------------------------------------------

def parse_xyz(text: str) -> Polyline3:
    """``x y z`` per line, blank lines separate loops, ``#`` comments."""
    loops: list[list[list[float]]] = [[]]
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            if raw.strip() == "" and loops[-1]:
                loops.append([])
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 3:
            raise ValueError(f"expected 3 coordinates, got {line!r}")
        loops[-1].append([float(p) for p in parts])
    return Polyline3([loop for loop in loops if loop])


def format_xyz(poly: Polyline3) -> str:
    return "\n\n".join(
        "\n".join(" ".join(repr(float(x)) for x in p) for p in loop) for loop in poly.loops
    ) + "\n"


def parse_polyline_json(text: str) -> Polyline3:
    """``{"components": [[[x, y, z], ...], ...]}``."""
    return Polyline3(json.loads(text)["components"])


# -- PD codes -----------------------------------------------------------------

class PDError(ValueError):
    pass


def pd_to_gauss(pd: Sequence[Sequence[int]], unknotted: int = 0) -> GaussDiagram:
    """Convert a PD code (KnotTheory convention) to a Gauss diagram.

    Each crossing ``X[i, j, k, l]`` lists its edges counterclockwise
    starting from the incoming under-strand, so the under-strand runs
    ``i -> k``.  The over-strand runs ``l -> j`` at a positive crossing and
    ``j -> l`` at a negative one.  Edge directions are propagated from the
    under-strands; a component that only ever passes over is oriented by
    increasing edge labels.  ``unknotted`` appends crossingless components.
    """
    X = [tuple(int(e) for e in x) for x in pd]
    for x in X:
        if len(x) != 4:
            raise PDError(f"crossing {x} must have 4 edges")
    slots: dict[int, list[tuple[int, int]]] = {}
    for ci, x in enumerate(X):
        for s, e in enumerate(x):
            slots.setdefault(e, []).append((ci, s))
    for e, occ in slots.items():
        if len(occ) != 2:
            raise PDError(f"edge {e} appears {len(occ)} times, expected 2")

    enters: dict[int, tuple[int, int]] = {}  # edge -> (crossing, slot) it runs into

    def other(e: int, where: tuple[int, int]) -> tuple[int, int]:
        a, b = slots[e]
        return b if a == where else a

    def set_entry(e: int, where: tuple[int, int]) -> None:
        if e in enters and enters[e] != where:
            raise PDError(f"edge {e} is inconsistently oriented")
        enters[e] = where

    def propagate() -> None:
        stack = list(enters)
        while stack:
            e = stack.pop()
            ci, s = enters[e]
            out = X[ci][(s + 2) % 4]
            tgt = other(out, (ci, (s + 2) % 4))
            if out not in enters:
                set_entry(out, tgt)
                stack.append(out)
            elif enters[out] != tgt:
                raise PDError(f"edge {out} is inconsistently oriented")

    for ci, x in enumerate(X):
        set_entry(x[0], (ci, 0))
        set_entry(x[2], other(x[2], (ci, 2)))
    propagate()
    for ci, x in enumerate(X):
        if x[1] in enters or x[3] in enters:
            continue
        # over-only strand: orient by label order
        j, l = x[1], x[3]
        positive = j == l + 1 or (j < l and l - j > 1)
        if positive:
            set_entry(l, (ci, 3))
        else:
            set_entry(j, (ci, 1))
        propagate()
    if len(enters) != len(slots):
        raise PDError("could not orient every edge")

    signs = []
    for ci, x in enumerate(X):
        if enters[x[1]] == (ci, 1) and enters[x[3]] == (ci, 3):
            raise PDError(f"crossing {ci}: both over-strand edges run in")
        if enters[x[1]] != (ci, 1) and enters[x[3]] != (ci, 3):
            raise PDError(f"crossing {ci}: both over-strand edges run out")
        signs.append(1 if enters[x[3]] == (ci, 3) else -1)

    seen: set[int] = set()
    components = []
    for start in sorted(slots):
        if start in seen:
            continue
        toks = []
        e = start
        while e not in seen:
            seen.add(e)
            ci, s = enters[e]
            toks.append(Token(ci + 1, s in (1, 3), signs[ci]))
            e = X[ci][(s + 2) % 4]
        if e != start:
            raise PDError("traversal did not close up")
        components.append(tuple(toks))
    components.extend(() for _ in range(unknotted))
    if not components:
        raise PDError("empty PD code needs unknotted components")
    return GaussDiagram(tuple(components)).canonical()
