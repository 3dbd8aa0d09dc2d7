"""Exact coefficient-ring calculator for (Z/p)^n-equivariant cohomology.

Submodules:
    charspace  characters, lines, echelon subsets, rank counting
    superalg   graded-commutative algebra and Macaulay quotient dimensions
    oracle     localized Borel coefficients, the independent ground truth
    phi        fixed-point presentation, closed form, three-way verification
    ssq        first/second page dimension bookkeeping and collapse check
    rograde    representation-graded dimensions and localizations
    cli        command-line table generator
"""

from .charspace import Character, GroupContext, Line

__all__ = ["Character", "GroupContext", "Line"]
__version__ = "0.1.0"
