"""Dense O(n^3) reference implementations used as ground truth in tests.

Deliberately shares no code with the generator-based elimination in
``cauchy_gko``: these routines accumulate the full matrix at every step, so
agreement between the two paths is meaningful evidence.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Permutation, SingularMatrixError, ToeplitzCoeffs

__all__ = [
    "DenseFactorization",
    "dense_gepp_factor",
    "dense_solve",
    "dense_schur_complement",
    "cond_estimate",
    "dense_toeplitz",
]

_EPS = float(np.finfo(float).eps)


@dataclass
class DenseFactorization:
    """P A = L U with row pivoting; ``pivots[k]`` is the row index (in the
    working ordering) chosen at step k."""

    perm: Permutation
    L: np.ndarray
    U: np.ndarray
    pivots: list

    @property
    def n(self) -> int:
        return self.L.shape[0]


def dense_gepp_factor(a) -> DenseFactorization:
    """Textbook Gaussian elimination with partial pivoting.

    The pivot is the largest-modulus entry of the current column, smallest
    index on ties (numpy argmax order).
    """
    A = np.array(a, dtype=complex)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"need a square matrix, got shape {A.shape}")
    n = A.shape[0]
    L = np.eye(n, dtype=complex)
    pidx = np.arange(n)
    pivots = []
    for k in range(n):
        q = k + int(np.argmax(np.abs(A[k:, k])))
        pivots.append(q)
        cand = abs(A[q, k])
        if cand <= n * _EPS * np.abs(A[k:, k]).max():
            raise SingularMatrixError(f"singular at elimination step {k}")
        if q != k:
            A[[k, q], k:] = A[[q, k], k:]
            L[[k, q], :k] = L[[q, k], :k]
            pidx[[k, q]] = pidx[[q, k]]
        L[k + 1 :, k] = A[k + 1 :, k] / A[k, k]
        A[k + 1 :, k:] -= np.outer(L[k + 1 :, k], A[k, k:])
        A[k + 1 :, k] = 0.0
    return DenseFactorization(perm=Permutation(pidx), L=L, U=np.triu(A), pivots=pivots)


def _substitute(f: DenseFactorization, b: np.ndarray) -> np.ndarray:
    z = b[f.perm.idx].astype(complex)
    n = f.n
    for i in range(n):
        z[i] -= f.L[i, :i] @ z[:i]
    for i in range(n - 1, -1, -1):
        z[i] -= f.U[i, i + 1 :] @ z[i + 1 :]
        z[i] /= f.U[i, i]
    return z


def dense_solve(a, b) -> np.ndarray:
    """Solve a dense square system by GE/PP and substitution.

    ``b`` may be a vector or a matrix of stacked right-hand-side columns.
    """
    f = dense_gepp_factor(a)
    b = np.asarray(b, dtype=complex)
    if b.shape[0] != f.n:
        raise ValueError(f"matrix is order {f.n}, b has length {b.shape[0]}")
    return _substitute(f, b)


def dense_schur_complement(a, k: int) -> np.ndarray:
    """Trailing (n-k) x (n-k) block after k unpivoted elimination steps.

    Equals A22 - A21 A11^{-1} A12 for the leading k x k block A11, which must
    be nonsingular (no pivoting is performed; a zero pivot raises).
    """
    A = np.array(a, dtype=complex)
    n = A.shape[0]
    if not 0 <= k <= n:
        raise ValueError(f"step count {k} out of range for order {n}")
    for step in range(k):
        piv = A[step, step]
        if piv == 0:
            raise SingularMatrixError(f"zero pivot at unpivoted step {step}")
        A[step + 1 :, step:] -= np.outer(A[step + 1 :, step] / piv, A[step, step:])
    return A[k:, k:]


def cond_estimate(a) -> float:
    """Frobenius condition number ||A||_F ||A^{-1}||_F.

    The inverse comes from GE/PP applied to the identity columns.  This
    overestimates the spectral condition number by at most a factor n, which
    is all the growth experiments need.
    """
    A = np.asarray(a, dtype=complex)
    inv = dense_solve(A, np.eye(A.shape[0], dtype=complex))
    return float(np.linalg.norm(A) * np.linalg.norm(inv))


def dense_toeplitz(c: ToeplitzCoeffs) -> np.ndarray:
    """Materialize the order-n Toeplitz matrix t_{ij} = a_{i-j}."""
    n = c.n
    i = np.arange(n)
    return c.a[(i[:, None] - i[None, :]) + n - 1]
