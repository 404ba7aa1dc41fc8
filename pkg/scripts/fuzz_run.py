"""Time the move-invariance fuzz and print a per-move-kind tally."""
import argparse
import time

from gaussmilnor.fuzz import FuzzConfig, run_fuzz


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--walks", type=int, default=1000)
    ap.add_argument("--steps", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--start", default="mixed")
    ap.add_argument("--transcription")
    args = ap.parse_args()
    cfg = FuzzConfig(walks=args.walks, steps=args.steps, seed=args.seed, start=args.start,
                     transcription=args.transcription)
    t = time.perf_counter()
    res = run_fuzz(cfg)
    print(f"{res.walks} walks, {res.moves} moves in {time.perf_counter() - t:.1f}s")
    for kind, n in sorted(res.kinds.items()):
        print(f"  {kind:10s} {n}")
    if res.ok:
        print("no violations")
    else:
        v = res.violations[0]
        G, site = v.minimized
        print(f"violation of {v.invariant} at walk {v.walk} step {v.step}: {v.before} -> {v.after}")
        print(f"minimized ({G.n_crossings} crossings, move {site}):\n{G}")


if __name__ == "__main__":
    main()
