"""Exact arithmetic for unit signatures and 2-parts of class groups of real
quadratic fields, plus finite abelian 2-group extension analysis."""

from ._core import (
    analyze_extension,
    brute_force_splits,
    classify,
    fundamental_unit,
    hilbert_symbol,
    kronecker_symbol,
    ranks,
    scan,
    selftest,
    sqrt_mod_2k,
    squarefree_part,
    DomainError,
    InternalInconsistency,
)

__all__ = [
    "analyze_extension",
    "brute_force_splits",
    "classify",
    "fundamental_unit",
    "hilbert_symbol",
    "kronecker_symbol",
    "ranks",
    "scan",
    "selftest",
    "sqrt_mod_2k",
    "squarefree_part",
    "DomainError",
    "InternalInconsistency",
]
