from .gcd import factor_binary_form, gcd_polys, squarefree_decomposition
from .linalg import (
    LinSubspace,
    PolyMatrix,
    intersect_subspaces,
    kernel_basis,
    maximal_minors,
    nullspace,
    rank,
    rank_at,
    rref,
    signed_maximal_minors,
)
from .poly import MPoly, Rat, divmod_poly, exact_div, render, render_rat
from .sampling import RationalSampler, with_retries

__all__ = [
    "LinSubspace",
    "MPoly",
    "PolyMatrix",
    "Rat",
    "RationalSampler",
    "divmod_poly",
    "exact_div",
    "factor_binary_form",
    "gcd_polys",
    "intersect_subspaces",
    "kernel_basis",
    "maximal_minors",
    "nullspace",
    "rank",
    "rank_at",
    "render",
    "render_rat",
    "rref",
    "signed_maximal_minors",
    "squarefree_decomposition",
    "with_retries",
]
