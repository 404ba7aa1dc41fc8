"""Random-walk invariance fuzzing with counterexample shrinking."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Mapping

from .diagram import GaussDiagram
from .invariants import INVARIANT_NAMES, invariants
from .links import catalog, random_link_diagram
from .moves import MoveSite, StaleMoveError, _delete, apply_move, inverse_site, random_site
from .patterns import CoefficientVector, eval_combination, transcription

Evaluator = Callable[[GaussDiagram], object]


@dataclass(frozen=True)
class FuzzConfig:
    walks: int = 1000
    steps: int = 50
    seed: int = 0
    max_crossings: int = 30
    start_crossings: int = 16
    invariants: tuple[str, ...] = INVARIANT_NAMES
    start: str = "mixed"  # mixed | trivial | spliced | catalog:<name>
    transcription: str | None = None
    coeffs: CoefficientVector | None = None  # also fuzz f_general of this vector


@dataclass
class Violation:
    walk: int
    step: int
    invariant: str
    before: object
    after: object
    diagram: GaussDiagram
    site: MoveSite
    minimized: tuple[GaussDiagram, MoveSite] | None = None


@dataclass
class FuzzResult:
    walks: int = 0
    moves: int = 0
    kinds: dict[str, int] = field(default_factory=dict)
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def start_diagram(cfg: FuzzConfig, walk: int) -> GaussDiagram:
    rng = random.Random(f"start:{cfg.seed}:{walk}")
    n = rng.randint(0, cfg.start_crossings)
    if cfg.start.startswith("catalog:"):
        return catalog(cfg.start.split(":", 1)[1])
    mode = cfg.start
    if mode == "mixed":
        mode = "trivial" if walk % 2 == 0 else "spliced"
    return random_link_diagram(3, n, seed=rng.getrandbits(32), mode=mode)


def _evaluator(cfg: FuzzConfig) -> Callable[[GaussDiagram], dict[str, object]]:
    pats = transcription(cfg.transcription) if cfg.transcription else None

    def evaluate(G: GaussDiagram) -> dict[str, object]:
        out = invariants(G, cfg.invariants, pats)
        if cfg.coeffs is not None:
            out["f"] = eval_combination(cfg.coeffs, G, pats)
        return out

    return evaluate


def run_walk(
    G: GaussDiagram,
    steps: int,
    seed: int,
    max_crossings: int,
    evaluate: Callable[[GaussDiagram], Mapping[str, object]],
    walk_index: int = 0,
    kinds: dict[str, int] | None = None,
) -> Violation | None:
    rng = random.Random(seed)
    ref = evaluate(G)
    for step in range(steps):
        site = random_site(G, rng, max_crossings)
        H = apply_move(G, site)
        if kinds is not None:
            kinds[site.kind] = kinds.get(site.kind, 0) + 1
        val = evaluate(H)
        for name, v in val.items():
            if v != ref[name]:
                return Violation(walk_index, step, name, ref[name], v, G, site)
        G = H
    return None


def run_fuzz(cfg: FuzzConfig, evaluate=None, starts=None) -> FuzzResult:
    """Run ``cfg.walks`` walks; ``starts`` (if given) are cycled as start diagrams."""
    evaluate = evaluate or _evaluator(cfg)
    result = FuzzResult()
    for w in range(cfg.walks):
        G = starts[w % len(starts)] if starts else start_diagram(cfg, w)
        v = run_walk(
            G,
            cfg.steps,
            seed=cfg.seed * 1_000_003 + w,
            max_crossings=cfg.max_crossings,
            evaluate=evaluate,
            walk_index=w,
            kinds=result.kinds,
        )
        result.walks += 1
        if v is not None:
            v.minimized = minimize(v.diagram, v.site, lambda D, n=v.invariant: evaluate(D)[n])
            result.violations.append(v)
            break
    result.moves = sum(result.kinds.values())
    return result


# -- shrinking ----------------------------------------------------------------

def _differs(G: GaussDiagram, site: MoveSite, fn: Evaluator) -> bool:
    try:
        return fn(G) != fn(apply_move(G, site))
    except (StaleMoveError, ValueError, ArithmeticError, RuntimeError):
        return False


def minimize(G: GaussDiagram, site: MoveSite, fn: Evaluator) -> tuple[GaussDiagram, MoveSite]:
    """Delete arrows that the move does not touch while the values still differ.

    Additions are turned around first (the added arrows get labels, so
    the inverse removal site survives deletions of other arrows).
    """
    if site.kind in ("R1_add", "R2_add"):
        H = apply_move(G, site)
        G, site = H, inverse_site(G, site)
    keep = set(site.params) if site.kind in ("R1_remove", "R2_remove", "R3") else set()
    while True:
        free = [x for x in sorted(G.arrows, reverse=True) if x not in keep]
        # single arrows first; pairs keep linking numbers integral
        candidates = [{x} for x in free] + [set(p) for p in itertools.combinations(free, 2)]
        for drop in candidates:
            smaller = _delete(G, drop)
            if _differs(smaller, site, fn):
                G = smaller
                break
        else:
            return G, site
