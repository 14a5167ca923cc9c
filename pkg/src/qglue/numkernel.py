"""Dense linear algebra and entropy primitives for small Hilbert spaces.

Matrices are plain complex ``numpy`` arrays. Entropies are in bits.
"""
from __future__ import annotations

from typing import NamedTuple, Sequence

import numpy as np
from scipy.linalg import block_diag

HERM_TOL = 1e-10
SUM_TOL = 1e-9
EIG_CLIP = 1e-12


class DimSplit(NamedTuple):
    """Factorization of a space as left (x) right."""

    d_left: int
    d_right: int

    @property
    def dim(self) -> int:
        return self.d_left * self.d_right


def as_matrix(m) -> np.ndarray:
    """Return ``m`` as a finite 2-D complex array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a 2-D matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    return a


def kron(a, b) -> np.ndarray:
    """Kronecker product with (A(x)B)[i*q+k, j*q+l] = A[i,j] B[k,l]."""
    return np.kron(as_matrix(a), as_matrix(b))


def partial_trace(m, split: DimSplit, side: str) -> np.ndarray:
    """Trace out the ``side`` factor ("left" or "right") of a bipartite operator."""
    m = as_matrix(m)
    dl, dr = split
    if m.shape != (dl * dr, dl * dr):
        raise ValueError(f"matrix of shape {m.shape} does not factor as {dl}x{dr}")
    t = m.reshape(dl, dr, dl, dr)
    if side == "right":
        return np.einsum("ikjk->ij", t)
    if side == "left":
        return np.einsum("kikj->ij", t)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def swap_factors(m, split: DimSplit) -> np.ndarray:
    """Reorder a bipartite operator on L(x)R to act on R(x)L."""
    m = as_matrix(m)
    dl, dr = split
    return m.reshape(dl, dr, dl, dr).transpose(1, 0, 3, 2).reshape(dl * dr, dl * dr)


def is_hermitian(m, tol: float = HERM_TOL) -> bool:
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and float(np.max(np.abs(m - m.conj().T), initial=0.0)) <= tol


def hermitian_spectrum(m) -> np.ndarray:
    """Eigenvalues of a Hermitian matrix in descending order."""
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if not is_hermitian(m):
        raise ValueError("matrix is not Hermitian within tolerance")
    return np.linalg.eigvalsh(m)[::-1]


def _entropy_from_eigs(e: np.ndarray) -> np.ndarray:
    e = np.clip(e, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(e > 0, -e * np.log2(np.where(e > 0, e, 1.0)), 0.0)
    return terms.sum(axis=-1)


def von_neumann_entropy(m) -> float:
    """S(rho) = -Tr rho log2 rho.

    Negative roundoff eigenvalues are clamped to zero; eigenvalues below
    ``-EIG_CLIP`` mean the input is not a density operator.
    """
    e = hermitian_spectrum(m)
    if abs(e.sum() - 1.0) > SUM_TOL:
        raise ValueError(f"trace {e.sum():.12g} deviates from 1")
    if e[-1] < -EIG_CLIP:
        raise ValueError(f"eigenvalue {e[-1]:.3g} is negative beyond tolerance")
    return float(_entropy_from_eigs(e))


def batch_entropy(mats: np.ndarray) -> np.ndarray:
    """Entropies of a stack of density operators with shape (..., d, d).

    No validation; used on optimizer hot paths.
    """
    return _entropy_from_eigs(np.linalg.eigvalsh(mats))


def shannon_entropy(p: Sequence[float]) -> float:
    """Base-2 Shannon entropy of a probability vector."""
    p = np.asarray(p, dtype=float)
    if np.any(p < 0):
        raise ValueError("probabilities must be non-negative")
    if abs(p.sum() - 1.0) > SUM_TOL:
        raise ValueError("probabilities must sum to 1")
    return float(_entropy_from_eigs(p))


def direct_sum_embed(blocks: Sequence) -> np.ndarray:
    """Block-diagonal matrix with the given square blocks in order."""
    mats = [as_matrix(b) for b in blocks]
    for b in mats:
        if b.shape[0] != b.shape[1]:
            raise ValueError("blocks must be square")
    return block_diag(*mats).astype(complex)
