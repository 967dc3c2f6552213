"""Brute-force spectral reference and seeded random trees for property tests.

The dense eigensolver is a cyclic Jacobi rotation scheme, fully independent
of the congruence sweep it is used to check.  Random labeled trees are drawn
uniformly by decoding a random Pruefer sequence.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from heapq import heappop, heappush, heapify
from typing import List, Tuple

import numpy as np

from . import _kernels
from .errors import DomainError, SizeLimitError
from .treediag import RootedTree, SymmetricTreeMatrix, build_tree

#: dense_spectrum refuses larger instances (misuse guard)
SIZE_LIMIT = 64

#: default eigenvalue tolerance of the oracle
DEFAULT_TOL = 1e-10

_MAX_SWEEPS = 100


@dataclass(frozen=True)
class DenseSpectrum:
    """All eigenvalues of a small symmetric matrix, ascending."""

    eigenvalues: Tuple[float, ...]
    tolerance: float


def dense_spectrum(m: SymmetricTreeMatrix, tol: float = DEFAULT_TOL) -> DenseSpectrum:
    """Every eigenvalue of the dense matrix within tol, ascending.

    Cyclic Jacobi sweeps stop once the off-diagonal Frobenius norm is at
    most tol/2, which bounds each eigenvalue error by tol/2.
    """
    if m.n > SIZE_LIMIT:
        raise SizeLimitError(f"dense oracle limited to n <= {SIZE_LIMIT}, got {m.n}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    work = np.ascontiguousarray(m.dense())
    values, converged = _kernels.jacobi_eigenvalues(work, 0.5 * tol, _MAX_SWEEPS)
    if not converged:  # pragma: no cover - quadratic convergence, n <= 64
        raise RuntimeError("Jacobi iteration failed to converge")
    return DenseSpectrum(eigenvalues=tuple(float(v) for v in values), tolerance=tol)


def random_tree(n: int, seed: int) -> RootedTree:
    """Uniformly random labeled tree on 1..n, rooted at n.

    The Pruefer sequence is drawn as n-2 independent
    ``random.Random(seed).randrange(1, n + 1)`` values and decoded
    smallest-leaf-first, so (n, seed) fully determines the tree.
    """
    if n < 1:
        raise DomainError("n must be positive")
    if n == 1:
        return build_tree([], root=1)
    if n == 2:
        return build_tree([(1, 2)], root=2)
    rng = random.Random(seed)
    seq = [rng.randrange(1, n + 1) for _ in range(n - 2)]
    return build_tree(_prufer_to_edges(seq, n), root=n)


def _prufer_to_edges(seq: List[int], n: int) -> List[Tuple[int, int]]:
    degree = [1] * (n + 1)
    for s in seq:
        degree[s] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapify(leaves)
    edges: List[Tuple[int, int]] = []
    for s in seq:
        leaf = heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heappush(leaves, s)
    u = heappop(leaves)
    v = heappop(leaves)
    edges.append((u, v))
    return edges
