"""Exact and high-precision tools for generalized Dedekind and Hardy sums,
Kloosterman and Gauss sums, Dirichlet L-values, and an audit of hybrid
mean-value formulas built from them."""
from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
