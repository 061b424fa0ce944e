"""Algebraic twisted L-values of rational elliptic curves.

Computes L(E, chi, 1) normalizations in Z[zeta_q], verifies the congruence
between twisted and untwisted algebraic L-values modulo <1 - zeta_q>, and
derives residual densities of the twisted values from matrix groups over
Z/q^m Z.
"""

__version__ = "0.1.0"
