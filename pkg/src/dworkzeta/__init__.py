"""Zeta-function factorizations of Dwork hypersurfaces over finite fields.

The library predicts the factorization of the middle-cohomology part of the
zeta function of x_1^n + ... + x_n^n - n*psi*x_1...x_n = 0 from the character
combinatorics of the automorphism group, and verifies the prediction by exact
point counting and isotypic projection.
"""

__version__ = "0.1.0"
