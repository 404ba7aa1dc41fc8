"""Nullspace dimension against the number of sampled move relations.

Also reports which named coefficient vectors survive.
"""
import argparse
from dataclasses import dataclass

from gaussmilnor.invariants import FACT_VECTOR, FAMILY_I, FAMILY_I_UNSIGNED, FAMILY_J
from gaussmilnor.patterns import CoefficientVector
from gaussmilnor.relations import basis_to_text, check_membership, integer_nullspace, sample_relations


@dataclass
class SolveConfig:
    seed: int = 0
    samples: tuple[int, ...] = (25, 50, 100, 200, 400, 600, 1000)
    show_basis: bool = False


NAMED = {
    "familyI": FAMILY_I,
    "familyJ": FAMILY_J,
    "familyI_unsigned": FAMILY_I_UNSIGNED,
    "fact_2211": FACT_VECTOR,
    "RR@123": CoefficientVector.from_dict({("RR", "123"): 1}),
}


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--basis", action="store_true")
    args = ap.parse_args()
    cfg = SolveConfig(seed=args.seed, show_basis=args.basis)
    print("samples  distinct  dim  " + "  ".join(NAMED))
    for n in cfg.samples:
        rows, _ = sample_relations(cfg.seed, n)
        basis = integer_nullspace(rows)
        flags = "  ".join(f"{str(check_membership(v, basis)):>{len(k)}}" for k, v in NAMED.items())
        print(f"{n:7d}  {len(rows):8d}  {len(basis):3d}  {flags}")
    if cfg.show_basis:
        print(basis_to_text(basis))


if __name__ == "__main__":
    main()
