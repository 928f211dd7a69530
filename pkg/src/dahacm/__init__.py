"""Exact computations for the q=1 double affine Hecke algebra of GL(n) and Calogero-Moser spaces."""

from .exact import Jet, format_rational, jet_arith, jet_var, parse_rational, rat, rat_arith
from .symgroup import Permutation, coxeter_length, enumerate_sn, reduced_word

__all__ = [
    "Jet",
    "Permutation",
    "coxeter_length",
    "enumerate_sn",
    "format_rational",
    "jet_arith",
    "jet_var",
    "parse_rational",
    "rat",
    "rat_arith",
    "reduced_word",
]
