"""Which pattern transcriptions keep families I and J invariant.

Runs a short fuzz for each shipped transcription and reports the
nullspace membership of both families under it.
"""
import argparse

from gaussmilnor.fuzz import FuzzConfig, run_fuzz
from gaussmilnor.invariants import FAMILY_I, FAMILY_J
from gaussmilnor.patterns import family_transcriptions, transcription
from gaussmilnor.relations import check_membership, integer_nullspace, sample_relations


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--walks", type=int, default=200)
    ap.add_argument("--samples", type=int, default=600)
    args = ap.parse_args()
    for name in family_transcriptions():
        pats = transcription(name)
        res = run_fuzz(FuzzConfig(walks=args.walks, steps=50, invariants=("familyI", "familyJ"), transcription=name))
        basis = integer_nullspace(sample_relations(0, args.samples, patterns=pats)[0])
        print(f"{name:12s} fuzz ok={res.ok}  dim={len(basis)}  "
              f"I in={check_membership(FAMILY_I, basis)}  J in={check_membership(FAMILY_J, basis)}")


if __name__ == "__main__":
    main()
