"""Monodromy-data machinery for the one-parameter Painleve VI family.

Subpackages cover exact real-cyclotomic arithmetic, braid dynamics on
monodromy triples, finite-orbit classification, rank-3 reflection groups,
2x2 monodromy matrices, connection formulas, the catalog of algebraic
solutions, and a numerical continuation engine.
"""

__version__ = "0.1.0"
