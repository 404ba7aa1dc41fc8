"""Gauss-diagram formulas for three-component link invariants."""
from .diagram import (
    S3,
    GaussCodeError,
    GaussDiagram,
    Permutation,
    Token,
    diagram,
    parse_gauss_code,
    serialize,
)
from .invariants import (
    Residue,
    family_I,
    family_J,
    linking_gcd,
    linking_number,
    milnor_mu123,
)
from .patterns import CoefficientVector, eval_combination, pairing

__version__ = "0.1.0"
