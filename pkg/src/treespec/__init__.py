"""treespec: rational recurrence closed forms and tree eigenvalue location.

Submodules:
  recurrence  the map x_{j+1} = alpha + gamma/x_j and its closed forms
  treediag    tree matrices, congruence diagonalization, inertia bisection
  oracle      brute-force dense spectra and seeded random trees
  signs       alternating-sign analytics of the pendant-path orbit
  limits      starlike-tree spectral radius limit points
  cli         command-line interface (``treespec`` entry point)
"""

from . import limits, oracle, recurrence, signs, treediag
from ._kernels import DISABLE_ENV, NUMBA_ENABLED

__all__ = [
    "recurrence",
    "treediag",
    "oracle",
    "signs",
    "limits",
    "DISABLE_ENV",
    "NUMBA_ENABLED",
]

__version__ = "0.1.0"
