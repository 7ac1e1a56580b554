"""Unitary DFT and the diagonal scalings of the Toeplitz-to-Cauchy transform.

The transform kernel used throughout is

    F = (1/sqrt(n)) [ exp(2 pi i (k-1)(j-1) / n) ],

the *positive-exponent* unitary DFT, so ``F @ v`` equals ``sqrt(n) * ifft(v)``
in numpy's convention and F* = F^{-1}.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import CauchyNodes

__all__ = ["DftPlan", "apply_F", "apply_F_inv", "toeplitz_cauchy_nodes", "scaling_D"]


@dataclass(frozen=True)
class DftPlan:
    """Precomputed n-th roots of unity for order-n transforms.

    Each root comes from one exponential evaluation per index (never from
    repeated multiplication, which would accumulate drift).
    """

    n: int
    roots: np.ndarray

    @classmethod
    def create(cls, n: int) -> "DftPlan":
        if n < 1:
            raise ValueError("transform order must be positive")
        k = np.arange(n)
        return cls(n=n, roots=np.exp(2j * np.pi * k / n))

    def matrix(self) -> np.ndarray:
        """Dense F, built from the precomputed roots via index arithmetic."""
        k = np.arange(self.n)
        return self.roots[np.outer(k, k) % self.n] / np.sqrt(self.n)


def _check_len(plan: DftPlan, v) -> np.ndarray:
    arr = np.asarray(v, dtype=complex)
    if arr.shape[0] != plan.n:
        raise ValueError(f"plan is order {plan.n}, input has length {arr.shape[0]}")
    return arr


def apply_F(plan: DftPlan, v) -> np.ndarray:
    """F @ v with unitary 1/sqrt(n) normalization.

    Works columnwise when ``v`` is a matrix.
    """
    arr = _check_len(plan, v)
    return np.sqrt(plan.n) * np.fft.ifft(arr, axis=0)


def apply_F_inv(plan: DftPlan, v) -> np.ndarray:
    """F* @ v, the inverse of :func:`apply_F` (F is unitary)."""
    arr = _check_len(plan, v)
    return np.fft.fft(arr, axis=0) / np.sqrt(plan.n)


def toeplitz_cauchy_nodes(n: int) -> CauchyNodes:
    """Displacement nodes of the Toeplitz-derived Cauchy-type matrix.

    t_k = exp(2 pi i k / n) are the n-th roots of unity and
    s_k = exp(pi i (2k+1) / n) the n-th roots of -1 (k = 0..n-1); each s sits
    on the unit circle halfway between two neighbouring t's.
    """
    if n < 1:
        raise ValueError("order must be positive")
    k = np.arange(n)
    t = np.exp(2j * np.pi * k / n)
    s = np.exp(1j * np.pi * (2 * k + 1) / n)
    return CauchyNodes(t=t, s=s)


def scaling_D(n: int) -> np.ndarray:
    """Unit-modulus diagonal d_k = exp(pi i k / n), k = 0..n-1."""
    if n < 1:
        raise ValueError("order must be positive")
    return np.exp(1j * np.pi * np.arange(n) / n)
