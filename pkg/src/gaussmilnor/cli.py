"""Command-line entry point.

Exit codes: 0 success, 2 unparsable input, 3 invariance violation,
4 internal contract breach (non-integral linking number, f(2,2,1,1) not
divisible by 6, inconsistent triple linking number).
"""
from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Sequence

from .diagram import GaussCodeError, GaussDiagram, parse_gauss_code, serialize
from .ingest import PDError, ProjectionError, parse_polyline_json, parse_xyz, pd_to_gauss, project
from .invariants import (
    INVARIANT_NAMES,
    InvariantContractError,
    NonIntegralLinkingError,
    f_general,
    report,
)
from .links import UnavailableLinkError, catalog, search_independent
from .patterns import CoefficientVector, ComponentCountError, PatternError, transcription

SEED_ENV = "GAUSSMILNOR_SEED"
EXIT_INPUT, EXIT_VIOLATION, EXIT_CONTRACT = 2, 3, 4
SAFE_INT = 2**53 - 1


class InputError(Exception):
    pass


@dataclass
class RunConfig:
    subcommand: str
    inputs: list[str] = field(default_factory=list)
    seed: int = 0
    format: str = "json"
    options: dict[str, Any] = field(default_factory=dict)


def _safe(obj):
    """Integers beyond the 53-bit range become decimal strings."""
    if isinstance(obj, bool):
        return obj
    if isinstance(obj, int):
        return str(obj) if abs(obj) > SAFE_INT else obj
    if isinstance(obj, dict):
        return {k: _safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_safe(v) for v in obj]
    return obj


def _emit(payload: dict, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(_safe(payload), sort_keys=True) + "\n")
    elif fmt == "csv":
        rows = payload.get("results", [])
        if rows:
            keys = sorted(rows[0])
            out.write(",".join(keys) + "\n")
            for r in rows:
                out.write(",".join(json.dumps(_safe(r[k])).replace(",", ";") for k in keys) + "\n")
    else:
        for k, v in payload.items():
            out.write(f"{k}: {v}\n")


def _read_diagram(source: str) -> GaussDiagram:
    if source.startswith("link:"):
        name, *params = source[5:].split(",")
        try:
            return catalog(name, *(int(p) for p in params))
        except (KeyError, ValueError, UnavailableLinkError) as exc:
            raise InputError(f"{source}: {exc}") from exc
    text = sys.stdin.read() if source == "-" else Path(source).read_text()
    try:
        return parse_gauss_code(text)
    except GaussCodeError as exc:
        raise InputError(f"{source}: {exc}") from exc


# -- subcommands ----------------------------------------------------------------

def _read_coeffs(path: str | None) -> CoefficientVector | None:
    if not path:
        return None
    try:
        return CoefficientVector.from_text(Path(path).read_text())
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from exc


def cmd_compute(cfg: RunConfig, out) -> int:
    coeffs = _read_coeffs(cfg.options.get("coeffs"))
    if coeffs is not None:
        coeffs = coeffs * int(cfg.options.get("scale", 1))
    pats = transcription(cfg.options["transcription"]) if cfg.options.get("transcription") else None
    results = []
    for source in cfg.inputs or ["-"]:
        G = _read_diagram(source)
        if G.n_components != 3:
            raise InputError(f"{source}: expected 3 components, got {G.n_components}")
        r = {"input": source, **report(G, pats)}
        if coeffs is not None:
            r["f"] = f_general(coeffs, G, pats)
        results.append(r)
    _emit({"config": dataclasses.asdict(cfg), "results": results}, cfg.format, out)
    return 0


def cmd_fuzz(cfg: RunConfig, out) -> int:
    from .fuzz import FuzzConfig, run_fuzz

    o = cfg.options
    which = INVARIANT_NAMES if o["invariant"] == "all" else (o["invariant"],)
    coeffs = _read_coeffs(o.get("coeffs"))
    if coeffs is not None and o["invariant"] == "all":
        which = ()
    fc = FuzzConfig(
        walks=o["walks"],
        steps=o["steps"],
        seed=cfg.seed,
        max_crossings=o["max_crossings"],
        invariants=which,
        start=o["start"],
        transcription=o.get("transcription"),
        coeffs=coeffs,
    )
    starts = [_read_diagram(source) for source in cfg.inputs] or None
    result = run_fuzz(fc, starts=starts)
    payload = {
        "config": dataclasses.asdict(cfg),
        "walks": result.walks,
        "moves": result.moves,
        "kinds": result.kinds,
        "ok": result.ok,
    }
    if not result.ok:
        v = result.violations[0]
        Gm, site = v.minimized
        payload["violation"] = {
            "walk": v.walk,
            "step": v.step,
            "invariant": v.invariant,
            "before": str(v.before),
            "after": str(v.after),
            "diagram": serialize(v.diagram, canonicalize=False),
            "move": str(v.site),
            "minimized_diagram": serialize(Gm, canonicalize=False),
            "minimized_move": str(site),
        }
    _emit(payload, cfg.format, out)
    return 0 if result.ok else EXIT_VIOLATION


def _parse_mix(text: str | None) -> dict[str, float] | None:
    if not text:
        return None
    mix = {}
    for part in text.split(","):
        k, _, v = part.partition("=")
        mix[k.strip()] = float(v)
    return mix


def cmd_solve(cfg: RunConfig, out) -> int:
    from .invariants import FAMILY_I, FAMILY_J
    from .relations import basis_to_text, check_membership, integer_nullspace, sample_relations

    rows, counts = sample_relations(cfg.seed, cfg.options["samples"], _parse_mix(cfg.options.get("mix")))
    basis = integer_nullspace(rows)
    payload = {
        "config": dataclasses.asdict(cfg),
        "sampled": sum(counts.values()),
        "distinct_rows": len(rows),
        "row_counts": dict(sorted(counts.items())),
        "dimension": len(basis),
        "contains_familyI": check_membership(FAMILY_I, basis),
        "contains_familyJ": check_membership(FAMILY_J, basis),
        "basis": basis_to_text(basis),
    }
    _emit(payload, cfg.format, out)
    return 0


def cmd_search(cfg: RunConfig, out) -> int:
    o = cfg.options
    hits = search_independent(o["bound"], o["budget"], cfg.seed, workers=o["workers"])
    payload = {
        "config": dataclasses.asdict(cfg),
        "hits": [
            {
                "index": h.index,
                "diagram": serialize(h.diagram),
                "familyI": h.family_I,
                "mu123": h.mu123.to_json(),
                "reverified": h.reverified,
            }
            for h in hits
        ],
    }
    _emit(payload, cfg.format, out)
    return 0


def cmd_ingest(cfg: RunConfig, out) -> int:
    o = cfg.options
    text = sys.stdin.read() if o["input"] == "-" else Path(o["input"]).read_text()
    try:
        if o["input_format"] == "pd":
            data = json.loads(text)
            pd = data["pd"] if isinstance(data, dict) else data
            extra = data.get("unknotted", 0) if isinstance(data, dict) else 0
            G = pd_to_gauss(pd, extra)
        else:
            poly = parse_xyz(text) if o["input_format"] == "xyz" else parse_polyline_json(text)
            direction = None
            if o.get("direction"):
                direction = [float(x) for x in o["direction"].split(",")]
            G = project(poly, direction, seed=cfg.seed)
    except (ValueError, KeyError, TypeError, PDError) as exc:
        raise InputError(f"{o['input']}: {exc}") from exc
    out.write(serialize(G))
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "fuzz": cmd_fuzz,
    "solve": cmd_solve,
    "search": cmd_search,
    "ingest": cmd_ingest,
}


# -- argument parsing ----------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gaussmilnor", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="JSON file with option defaults")
    p.add_argument("--format", choices=("json", "csv", "text"), default=None)
    p.add_argument("--seed", type=int, default=None, help=f"default from ${SEED_ENV}, else 0")
    sub = p.add_subparsers(dest="subcommand", required=True)
    p.set_defaults(_sub=sub)
    # the global options may also follow the subcommand
    seed_only = argparse.ArgumentParser(add_help=False)
    seed_only.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common = argparse.ArgumentParser(add_help=False, parents=[seed_only])
    common.add_argument("--format", choices=("json", "csv", "text"), default=argparse.SUPPRESS)

    c = sub.add_parser("compute", parents=[common], help="invariant report per diagram")
    c.add_argument("inputs", nargs="*", help="Gauss-code files, '-' for stdin, or link:NAME[,params]")
    c.add_argument("--coeffs", help="coefficient file for f_general")
    c.add_argument("--scale", type=int, default=1)
    c.add_argument("--transcription")

    f = sub.add_parser("fuzz", parents=[common], help="random-walk invariance check")
    f.add_argument("inputs", nargs="*", help="start diagrams (default: generated)")
    f.add_argument("--walks", type=int, default=1000)
    f.add_argument("--steps", type=int, default=50)
    f.add_argument("--max-crossings", type=int, default=30)
    f.add_argument("--invariant", choices=("familyI", "familyJ", "mu123", "lk", "all"), default="all")
    f.add_argument("--start", default="mixed", help="mixed, trivial, spliced or catalog:NAME")
    f.add_argument("--transcription")
    f.add_argument("--coeffs", help="also fuzz f for this coefficient file (alone unless --invariant is set)")

    s = sub.add_parser("solve", parents=[common], help="nullspace of sampled move relations")
    s.add_argument("--samples", type=int, default=600)
    s.add_argument("--mix", help="e.g. R3=4,BasePoint=3,R1_add=1")

    r = sub.add_parser("search", parents=[common], help="look for lk=0, mu=0, family I != 0")
    r.add_argument("--bound", type=int, default=20)
    r.add_argument("--budget", type=int, default=100_000)
    r.add_argument("--workers", type=int, default=1)

    i = sub.add_parser("ingest", parents=[seed_only], help="polyline or PD code to Gauss code")
    i.add_argument("--input", required=True)
    i.add_argument("--format", dest="input_format", choices=("xyz", "json", "pd"), default="xyz")
    i.add_argument("--direction", help="x,y,z view direction")
    return p


def config_from_args(argv: Sequence[str] | None) -> RunConfig:
    """Flags win over the config file, which wins over built-in defaults."""
    parser = build_parser()
    args = parser.parse_args(argv)
    defaults: dict[str, Any] = {}
    if args.config:
        defaults = {k.replace("-", "_"): v for k, v in json.loads(Path(args.config).read_text()).items()}
        sub = args._sub.choices[args.subcommand]
        known = {a.dest for a in sub._actions} | {"seed", "format"}
        unknown = sorted(set(defaults) - known)
        if unknown:
            parser.error(f"{args.config}: unknown option(s) for {args.subcommand}: {', '.join(unknown)}")
        sub.set_defaults(**{k: v for k, v in defaults.items() if k not in ("seed", "format")})
        args = parser.parse_args(argv)
    env_seed = int(os.environ.get(SEED_ENV, "0"))
    seed = args.seed if args.seed is not None else int(defaults.get("seed", env_seed))
    fmt = args.format or defaults.get("format", "json")
    skip = ("config", "subcommand", "format", "seed", "inputs", "_sub")
    opts = {k: v for k, v in vars(args).items() if k not in skip}
    return RunConfig(args.subcommand, list(getattr(args, "inputs", None) or []), seed, fmt, opts)


def run(cfg: RunConfig, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        return COMMANDS[cfg.subcommand](cfg, out)
    except (InputError, OSError, ComponentCountError, PatternError, ProjectionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (InvariantContractError, NonIntegralLinkingError) as exc:
        err.write(f"contract breach: {exc}\n")
        return EXIT_CONTRACT


def main(argv: Sequence[str] | None = None) -> int:
    return run(config_from_args(argv))


if __name__ == "__main__":
    sys.exit(main())
