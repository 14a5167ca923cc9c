"""Gluing isometries along orthogonal subspace blocks.

Each part J_j acts between small spaces; injections (isometric embeddings
whose columns span a PDI block) place it inside the ambient spaces. Basis
order inside a block is fixed by :func:`injection`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .channels import ISO_TOL, PDI, ChannelPair, Isometry, Superoperator
from .numkernel import SUM_TOL

__all__ = [
    "BlockWeights",
    "GluedSpec",
    "embed",
    "glue",
    "glue_block_diagonal",
    "glue_convex",
    "glue_direct_sum",
    "glue_input_and_complement",
    "injection",
    "proportionality_residual",
    "slice_isometry",
    "subchannel",
]


@dataclass(frozen=True)
class BlockWeights:
    """Strictly positive probabilities."""

    p: tuple

    def __post_init__(self):
        p = tuple(float(x) for x in self.p)
        if not p or any(x <= 0 for x in p):
            raise ValueError("block weights must be positive")
        if abs(sum(p) - 1.0) > SUM_TOL:
            raise ValueError("block weights must sum to 1")
        object.__setattr__(self, "p", p)


def injection(projector: np.ndarray) -> np.ndarray:
    """Columns form an orthonormal basis of the projector's range.

    Diagonal 0/1 projectors yield coordinate vectors in increasing order;
    otherwise eigenvectors with eigenvalue 1 are used.
    """
    p = np.asarray(projector, dtype=complex)
    diag = np.real(np.diag(p))
    if np.max(np.abs(p - np.diag(np.diag(p)))) <= ISO_TOL:
        idx = np.flatnonzero(diag > 0.5)
        return np.eye(p.shape[0], dtype=complex)[:, idx]
    w, v = np.linalg.eigh(p)
    return v[:, w > 0.5]


def embed(part: Isometry, v_a: np.ndarray, v_b: np.ndarray, v_c: np.ndarray) -> np.ndarray:
    """(V_b (x) V_c) J V_a^dag as an ambient operator."""
    return np.kron(v_b, v_c) @ part.matrix @ v_a.conj().T


@dataclass(frozen=True)
class GluedSpec:
    """Weighted parts already embedded in the ambient spaces.

    ``parts[j]`` are ambient operators H_a -> H_b (x) H_c (e.g. from
    :func:`embed`); ``weights`` are the amplitudes nu_j.
    """

    parts: tuple
    weights: tuple
    d_a: int
    d_b: int
    d_c: int

    def __post_init__(self):
        parts = tuple(np.asarray(j, dtype=complex) for j in self.parts)
        w = tuple(float(x) for x in self.weights)
        if len(parts) != len(w) or not parts:
            raise ValueError("need one weight per part")
        if any(x <= 0 for x in w):
            raise ValueError("gluing weights must be positive")
        shape = (self.d_b * self.d_c, self.d_a)
        for j in parts:
            if j.shape != shape:
                raise ValueError(f"part shape {j.shape} != ambient {shape}")
        for i, ji in enumerate(parts):
            for jj in parts[:i]:
                if np.max(np.abs(ji.conj().T @ jj)) > ISO_TOL:
                    raise ValueError("parts violate the orthogonality condition")
        closure = sum(x * x * (j.conj().T @ j) for x, j in zip(w, parts))
        if np.max(np.abs(closure - np.eye(self.d_a))) > ISO_TOL:
            raise ValueError("weighted parts do not close to an isometry")
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "weights", w)


def glue(spec: GluedSpec) -> Isometry:
    """J = sum_j nu_j J_j."""
    m = sum(w * j for w, j in zip(spec.weights, spec.parts))
    return Isometry(m, spec.d_a, spec.d_b, spec.d_c)


def subchannel(pair: ChannelPair, pdi: PDI, j: int) -> tuple[Superoperator, Superoperator]:
    """(B_j, C_j) with X_j(A) = X(P_j A P_j)."""
    if not 0 <= j < len(pdi):
        raise IndexError(f"block index {j} out of range")
    if pdi.dim != pair.d_a:
        raise ValueError("PDI must act on the input space")
    p = pdi[j]
    proj = Superoperator.from_kraus([p])
    return pair.B.compose(proj), pair.C.compose(proj)


def _pdi_or_blocks(pdi: Optional[PDI], sizes: Sequence[int]) -> list[np.ndarray]:
    if pdi is None:
        pdi = PDI.blocks(sizes)
    if len(pdi) != len(sizes):
        raise ValueError("PDI has the wrong number of blocks")
    vs = [injection(p) for p in pdi.projectors]
    for v, s in zip(vs, sizes):
        if v.shape[1] != s:
            raise ValueError("PDI block rank does not match the part dimension")
    return vs


def glue_convex(
    parts: Sequence[Isometry], w: BlockWeights, pdi_c: Optional[PDI] = None
) -> Isometry:
    """Parts share H_a and H_b; complements go to orthogonal blocks of H_c.

    The resulting B is the convex combination sum_j p_j B_j.
    """
    if len(parts) != len(w.p):
        raise ValueError("need one weight per part")
    da, db = parts[0].d_a, parts[0].d_b
    if any(j.d_a != da or j.d_b != db for j in parts):
        raise ValueError("convex gluing needs a common input and output space")
    vcs = _pdi_or_blocks(pdi_c, [j.d_c for j in parts])
    ia, ib = np.eye(da), np.eye(db)
    emb = [embed(j, ia, ib, vc) for j, vc in zip(parts, vcs)]
    dc = vcs[0].shape[0]
    return glue(GluedSpec(tuple(emb), tuple(np.sqrt(w.p)), da, db, dc))


def glue_input_and_complement(
    parts: Sequence[Isometry], pdis: Optional[tuple[PDI, PDI]] = None
) -> Isometry:
    """Parts on orthogonal input blocks P_j, common H_b, complements in blocks R_j."""
    db = parts[0].d_b
    if any(j.d_b != db for j in parts):
        raise ValueError("parts must share H_b")
    pa, pc = pdis if pdis is not None else (None, None)
    vas = _pdi_or_blocks(pa, [j.d_a for j in parts])
    vcs = _pdi_or_blocks(pc, [j.d_c for j in parts])
    ib = np.eye(db)
    emb = [embed(j, va, ib, vc) for j, va, vc in zip(parts, vas, vcs)]
    return glue(GluedSpec(tuple(emb), (1.0,) * len(parts), vas[0].shape[0], db, vcs[0].shape[0]))


def _block_diagonal(
    parts: Sequence[Isometry], weights: Sequence[float], pdis: Optional[tuple[PDI, PDI]] = None
) -> Isometry:
    # Zero weights are allowed here so erasure endpoints can reuse the construction.
    da = parts[0].d_a
    if any(j.d_a != da for j in parts):
        raise ValueError("block-diagonal gluing needs a common input space")
    pb, pc = pdis if pdis is not None else (None, None)
    vbs = _pdi_or_blocks(pb, [j.d_b for j in parts])
    vcs = _pdi_or_blocks(pc, [j.d_c for j in parts])
    ia = np.eye(da)
    m = sum(
        np.sqrt(w) * embed(j, ia, vb, vc) for j, w, vb, vc in zip(parts, weights, vbs, vcs)
    )
    return Isometry(m, da, vbs[0].shape[0], vcs[0].shape[0])


def glue_block_diagonal(
    parts: Sequence[Isometry], w: BlockWeights, pdis: Optional[tuple[PDI, PDI]] = None
) -> Isometry:
    """Common H_a; B and C outputs in correlated orthogonal blocks Q_j, R_j.

    B(A) = (+)_j p_j B_j(A) and C(A) = (+)_j p_j C_j(A).
    """
    if len(parts) != len(w.p):
        raise ValueError("need one weight per part")
    return _block_diagonal(parts, w.p, pdis)


def glue_direct_sum(
    parts: Sequence[Isometry], pdis: Optional[tuple[PDI, PDI, PDI]] = None
) -> Isometry:
    """Direct sum over input blocks P_j, output blocks Q_j and R_j."""
    pa, pb, pc = pdis if pdis is not None else (None, None, None)
    vas = _pdi_or_blocks(pa, [j.d_a for j in parts])
    vbs = _pdi_or_blocks(pb, [j.d_b for j in parts])
    vcs = _pdi_or_blocks(pc, [j.d_c for j in parts])
    emb = [embed(j, va, vb, vc) for j, va, vb, vc in zip(parts, vas, vbs, vcs)]
    return glue(
        GluedSpec(
            tuple(emb), (1.0,) * len(parts), vas[0].shape[0], vbs[0].shape[0], vcs[0].shape[0]
        )
    )


def slice_isometry(j_matrix: np.ndarray, pdis: tuple[PDI, PDI, PDI], indices: tuple[int, int, int]):
    """K_jkl = (Q_k (x) R_l) J P_j."""
    pa, pb, pc = pdis
    j, k, l = indices
    m = np.asarray(j_matrix, dtype=complex)
    if m.shape != (pb.dim * pc.dim, pa.dim):
        raise ValueError("PDIs do not match the operator dimensions")
    return np.kron(pb[k], pc[l]) @ m @ pa[j]


def proportionality_residual(k: np.ndarray, p: np.ndarray) -> float:
    """max |K^dag K - (Tr K^dag K / Tr P) P|, zero iff K is a scaled isometry on P."""
    g = k.conj().T @ k
    scale = np.trace(g) / np.trace(p)
    return float(np.max(np.abs(g - scale * p)))
