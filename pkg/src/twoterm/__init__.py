"""Exact verification and construction engine for two-term graded algebras.

Structure-constant calculus over the rationals for strict two-term
algebras (Lie, pre-Lie, associative), their representations and duals,
compatible cobrackets, and the graded classical Yang-Baxter machinery.
All arithmetic is exact; every verifier reports residuals, never floats.
"""

__version__ = "0.1.0"
