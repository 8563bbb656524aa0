"""Exact lattice computations for hyperkähler manifolds of OG10 type."""

__version__ = "0.1.0"
