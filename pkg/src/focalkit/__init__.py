"""Exact computation of focal loci, fixed tangent spaces and Gauss-map
degeneracy for polynomial families of linear spaces."""

__version__ = "0.1.0"
