"""Linking numbers, the two invariant families, and the triple linking number.

Coefficient vectors are stored with the permutation sign folded out, so
``eval_combination`` multiplies by ``sgn(sigma)`` itself.  A displayed
formula such as ``sum_sigma sgn(sigma) (RR_sigma + LL_kji)`` therefore puts
``+1`` on every RR cell and ``-1`` on every LL cell, because reversing
``(i, j, k)`` is odd.

The triple linking number is computed from a based formula of three
two-arrow patterns (``M1 + M2 - M3`` in the ``mu123`` transcription) and
reduced modulo the gcd of the linking numbers.  The quotient
``f(2,2,1,1)/6`` is evaluated alongside as a consistency check: it must be
an integer and it must equal twice the based value modulo the gcd.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .diagram import S3, GaussDiagram, Permutation
from .patterns import (
    ArrowPattern,
    CoefficientVector,
    _need3,
    cell_counts,
    eval_combination,
    pairing_table,
    orbit_vector,
    pairing,
    transcription,
)


class NonIntegralLinkingError(ValueError):
    """Odd signed crossing count between two components."""


class InvariantContractError(RuntimeError):
    """A quantity that must be integral or consistent was not."""


@dataclass(frozen=True)
class Residue:
    value: int
    modulus: int = 0

    def __post_init__(self):
        if self.modulus < 0:
            raise ValueError("modulus must be nonnegative")
        if self.modulus and not 0 <= self.value < self.modulus:
            raise ValueError(f"value {self.value} not reduced mod {self.modulus}")

    @classmethod
    def of(cls, value: int, modulus: int) -> "Residue":
        return cls(value % modulus if modulus else value, modulus)

    def __neg__(self) -> "Residue":
        return Residue.of(-self.value, self.modulus)

    def to_json(self) -> dict:
        return {"value": self.value, "mod": self.modulus}


# -- linking numbers --------------------------------------------------------

def linking_number(G: GaussDiagram, a: int, b: int) -> int:
    """Linking number of components ``a`` and ``b`` (1-based)."""
    n = G.n_components
    if a == b or not (1 <= a <= n and 1 <= b <= n):
        raise ValueError(f"need two distinct components in 1..{n}, got {a}, {b}")
    pair = {a - 1, b - 1}
    total = sum(
        arrow.sign for arrow in G.arrows.values() if {arrow.tail.component, arrow.head.component} == pair
    )
    if total % 2:
        raise NonIntegralLinkingError(
            f"components {a}, {b}: signed crossing sum {total} is odd"
        )
    return total // 2


def linking_numbers(G: GaussDiagram) -> tuple[int, int, int]:
    """``(lk12, lk13, lk23)``."""
    return (linking_number(G, 1, 2), linking_number(G, 1, 3), linking_number(G, 2, 3))


def linking_gcd(G: GaussDiagram) -> int:
    _need3(G)
    return math.gcd(*linking_numbers(G))


# -- the invariant families -------------------------------------------------

FAMILY_I = orbit_vector(1, -1, 0, 0)
FAMILY_J = CoefficientVector.from_dict(
    {("RL", "123"): 1, ("LR", "231"): -1, ("RL", "321"): -1, ("LR", "132"): 1}
)
FACT_VECTOR = orbit_vector(2, 2, 1, 1)

# the condition a_ijk = b_kji read without the sign fold; kept for comparison
FAMILY_I_UNSIGNED = orbit_vector(1, 1, 0, 0)


def family_I(G: GaussDiagram, patterns: Mapping[str, ArrowPattern] | None = None) -> int:
    return eval_combination(FAMILY_I, G, patterns)


def family_J(G: GaussDiagram, patterns: Mapping[str, ArrowPattern] | None = None) -> int:
    return eval_combination(FAMILY_J, G, patterns)


def f_general(c: CoefficientVector, G: GaussDiagram, patterns=None) -> int:
    return eval_combination(c, G, patterns)


def fact_quotient(G: GaussDiagram, patterns=None, table=None) -> int:
    """``f(2,2,1,1)/6``; raises if the division is not exact."""
    value = eval_combination(FACT_VECTOR, G, patterns, table)
    if value % 6:
        raise InvariantContractError(f"f(2,2,1,1) = {value} is not divisible by 6")
    return value // 6


MU123_TERMS: tuple[tuple[str, int], ...] = (("M1", 1), ("M2", 1), ("M3", -1))


def mu123_based(G: GaussDiagram, counts=None) -> int:
    """Integer value of the based formula, before reduction."""
    _need3(G)
    pats = transcription("mu123")
    if counts is None:
        counts = cell_counts(G)
    ident = Permutation.identity()
    return sum(c * pairing(pats[name], ident, G, counts) for name, c in MU123_TERMS)


def milnor_mu123(G: GaussDiagram, check: bool = True, counts=None) -> Residue:
    """Triple linking number modulo the gcd of the linking numbers."""
    g = linking_gcd(G)
    if counts is None:
        counts = cell_counts(G)
    value = mu123_based(G, counts)
    if check:
        q = fact_quotient(G, table=pairing_table(G, counts=counts))
        diff = q - 2 * value
        if (diff % g) if g else diff:
            raise InvariantContractError(
                f"f(2,2,1,1)/6 = {q} disagrees with twice the based value {value} mod {g}"
            )
    return Residue.of(value, g)


INVARIANT_NAMES = ("lk", "familyI", "familyJ", "mu123")


def invariants(
    G: GaussDiagram,
    which: tuple[str, ...] = INVARIANT_NAMES,
    patterns: Mapping[str, ArrowPattern] | None = None,
) -> dict[str, object]:
    """Selected invariants, sharing one cell count."""
    counts = cell_counts(G)
    table = pairing_table(G, patterns, counts)
    out: dict[str, object] = {}
    for name in which:
        if name == "lk":
            out[name] = linking_numbers(G)
        elif name == "familyI":
            out[name] = eval_combination(FAMILY_I, G, table=table)
        elif name == "familyJ":
            out[name] = eval_combination(FAMILY_J, G, table=table)
        elif name == "mu123":
            out[name] = milnor_mu123(G, counts=counts)
        else:
            raise ValueError(f"unknown invariant {name!r}")
    return out


def report(G: GaussDiagram, patterns=None) -> dict:
    """The JSON invariant report for one diagram."""
    inv = invariants(G, patterns=patterns)
    return {
        "lk": list(inv["lk"]),
        "familyI": inv["familyI"],
        "familyJ": inv["familyJ"],
        "mu123": inv["mu123"].to_json(),
    }


__all__ = [
    "FACT_VECTOR",
    "FAMILY_I",
    "FAMILY_J",
    "InvariantContractError",
    "NonIntegralLinkingError",
    "Residue",
    "S3",
    "f_general",
    "fact_quotient",
    "family_I",
    "family_J",
    "linking_gcd",
    "linking_number",
    "linking_numbers",
    "milnor_mu123",
    "mu123_based",
    "invariants",
    "report",
]
