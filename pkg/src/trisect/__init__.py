"""Invariants of 4-manifolds from trisection diagrams.

Integral and twisted homology, intersection forms, the Alexander polynomial and
abelian Reidemeister torsion, all computed with exact arithmetic.
"""
__version__ = "0.1.0"
