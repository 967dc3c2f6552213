"""Hot numeric loops, JIT-compiled with numba when available.

Every kernel exists twice: ``<name>_py`` is the pure NumPy/Python
implementation and ``<name>`` is the dispatch target actually used by the
rest of the package.  When numba imports successfully and the environment
variable ``TREESPEC_DISABLE_NUMBA`` is unset (or falsy), the dispatch target
is the ``@njit``-compiled version; otherwise it is the plain function.  Both
paths execute the identical operation sequence, so results agree bitwise.

``benchmarks/bench_kernels.py`` times the two paths against each other.
"""

import os

import numpy as np

DISABLE_ENV = "TREESPEC_DISABLE_NUMBA"


def _numba_disabled() -> bool:
    return os.environ.get(DISABLE_ENV, "").strip().lower() in {"1", "true", "yes", "on"}


NUMBA_ENABLED = False
if not _numba_disabled():
    try:
        from numba import njit as _njit

        NUMBA_ENABLED = True
    except ImportError:  # pragma: no cover - numba is a declared dependency
        NUMBA_ENABLED = False


def _jit(func):
    if NUMBA_ENABLED:
        return _njit(cache=True)(func)
    return func


def jt_sweep_py(a, order, parent, w2, zero_tol):
    """One congruence sweep over a tree, bottom-up.

    a        : float64[n], on entry the shifted diagonal m_ii - alpha,
               on exit the final vertex values (modified in place).
    order    : int64[n], 0-based postorder (children before parents).
    parent   : int64[n], 0-based parent index, -1 for the root.
    w2       : float64[n], squared weight of the edge to the parent (0 at root).
    zero_tol : values with |a| <= zero_tol count as zero.

    A vertex whose finalized value is zero makes its parent take the value
    -w^2/2 while the zero child becomes 2 and the parent's own parent edge is
    cut (the parent then contributes nothing upward).  Ties between several
    zero children go to the smallest vertex index.
    """
    n = a.shape[0]
    acc = np.zeros(n, dtype=np.float64)
    zero_child = np.full(n, -1, dtype=np.int64)
    for idx in range(n):
        v = order[idx]
        zc = zero_child[v]
        if zc >= 0:
            a[v] = -0.5 * w2[zc]
            a[zc] = 2.0
            continue  # edge to v's parent removed: no contribution upward
        a[v] -= acc[v]
        p = parent[v]
        if p >= 0:
            if -zero_tol <= a[v] <= zero_tol:
                if zero_child[p] < 0 or v < zero_child[p]:
                    zero_child[p] = v
            else:
                acc[p] += w2[v] / a[v]
    return a


def jacobi_eigenvalues_py(mat, off_tol, max_sweeps):
    """Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.

    ``mat`` is destroyed.  Sweeps run until the off-diagonal Frobenius norm
    drops to ``off_tol`` (which bounds every eigenvalue error) or
    ``max_sweeps`` is exhausted.  Returns (eigenvalues ascending, converged).
    """
    n = mat.shape[0]
    converged = False
    for _ in range(max_sweeps):
        off = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                off += 2.0 * mat[i, j] * mat[i, j]
        if np.sqrt(off) <= off_tol:
            converged = True
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = mat[p, q]
                if apq == 0.0:
                    continue
                tau = (mat[q, q] - mat[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                app = mat[p, p]
                aqq = mat[q, q]
                mat[p, p] = app - t * apq
                mat[q, q] = aqq + t * apq
                mat[p, q] = 0.0
                mat[q, p] = 0.0
                for k in range(n):
                    if k != p and k != q:
                        akp = mat[k, p]
                        akq = mat[k, q]
                        mat[k, p] = c * akp - s * akq
                        mat[p, k] = mat[k, p]
                        mat[k, q] = s * akp + c * akq
                        mat[q, k] = mat[k, q]
    if n <= 1:
        converged = True
    out = np.empty(n, dtype=np.float64)
    for i in range(n):
        out[i] = mat[i, i]
    return np.sort(out), converged


def orbit_fill_py(out, alpha, gamma, zero_tol):
    """Fill ``out`` with the orbit x_{j+1} = alpha + gamma / x_j.

    ``out[0]`` must hold x_1 on entry.  Returns (filled, hit) where ``hit``
    is the 1-based index of the first value within ``zero_tol`` of zero (the
    orbit stops there), or 0 when all ``len(out)`` values were produced.
    """
    count = out.shape[0]
    for j in range(1, count):
        prev = out[j - 1]
        if -zero_tol <= prev <= zero_tol:
            return j, j
        out[j] = alpha + gamma / prev
    if -zero_tol <= out[count - 1] <= zero_tol:
        return count, count
    return count, 0


jt_sweep = _jit(jt_sweep_py)
jacobi_eigenvalues = _jit(jacobi_eigenvalues_py)
orbit_fill = _jit(orbit_fill_py)
