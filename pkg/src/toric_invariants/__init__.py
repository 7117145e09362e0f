"""Exact invariants of simplicial complexes, moment-angle complexes and quasitoric manifolds."""

__version__ = "0.1.0"
