"""Densities of primes p for which a subgroup of Q* has index m in F_p^*."""

from ._core import (
    Group,
    IndexDensityError,
    artin_constant,
    classify_lenstra,
    classify_minus_one_a,
    euler_kappa,
    format_significant,
    hooley_density,
    merge_histograms,
    minus_one_a_census,
    minus_one_a_density,
    moree_odd_density,
    scan,
)

__all__ = [
    "Group",
    "IndexDensityError",
    "artin_constant",
    "classify_lenstra",
    "classify_minus_one_a",
    "euler_kappa",
    "format_significant",
    "hooley_density",
    "merge_histograms",
    "minus_one_a_census",
    "minus_one_a_density",
    "moree_odd_density",
    "scan",
]
