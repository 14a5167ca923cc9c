"""Isometries, complementary channel pairs, superoperators and degrading maps.

Conventions
-----------
An isometry ``J`` maps ``H_a`` into ``H_b (x) H_c`` with output index
``b * d_c + c``. A superoperator on operators of dimension ``d_in`` is stored
as a ``d_out**2 x d_in**2`` matrix acting on row-major vectorized operators,
so ``S(A) = (M @ A.ravel()).reshape(d_out, d_out)`` and composition is a
matrix product.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .numkernel import SUM_TOL, as_matrix, batch_entropy, von_neumann_entropy

ISO_TOL = 1e-10


@dataclass(frozen=True)
class Isometry:
    """Isometry J: H_a -> H_b (x) H_c."""

    matrix: np.ndarray
    d_a: int
    d_b: int
    d_c: int

    def __post_init__(self):
        m = as_matrix(self.matrix)
        if m.shape != (self.d_b * self.d_c, self.d_a):
            raise ValueError(
                f"isometry shape {m.shape} != ({self.d_b}*{self.d_c}, {self.d_a})"
            )
        err = isometry_defect(m)
        if err > ISO_TOL:
            raise ValueError(f"J^dag J deviates from identity by {err:.3g}")
        m = m.copy()
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @property
    def tensor(self) -> np.ndarray:
        """View of J with shape (d_b, d_c, d_a)."""
        return self.matrix.reshape(self.d_b, self.d_c, self.d_a)

    def swapped(self) -> "Isometry":
        """The same isometry with the b and c factors exchanged."""
        t = self.tensor.transpose(1, 0, 2).reshape(self.d_b * self.d_c, self.d_a)
        return Isometry(t, self.d_a, self.d_c, self.d_b)


def isometry_defect(m: np.ndarray) -> float:
    """max |J^dag J - I| entrywise."""
    g = m.conj().T @ m
    return float(np.max(np.abs(g - np.eye(g.shape[0])), initial=0.0))


@dataclass(frozen=True)
class Superoperator:
    """Linear map on operators, stored in the matrix-unit basis."""

    dim_in: int
    dim_out: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.shape != (self.dim_out**2, self.dim_in**2):
            raise ValueError(f"superoperator matrix shape {m.shape} mismatches dims")
        object.__setattr__(self, "matrix", m)

    def __call__(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=complex)
        if a.shape != (self.dim_in, self.dim_in):
            raise ValueError(f"operator shape {a.shape} mismatches dim_in={self.dim_in}")
        return (self.matrix @ a.reshape(-1)).reshape(self.dim_out, self.dim_out)

    def apply_batch(self, mats: np.ndarray) -> np.ndarray:
        """Apply to a stack of operators with shape (n, d_in, d_in)."""
        n = mats.shape[0]
        flat = mats.reshape(n, -1) @ self.matrix.T
        return flat.reshape(n, self.dim_out, self.dim_out)

    def compose(self, inner: "Superoperator") -> "Superoperator":
        """Return self o inner."""
        if inner.dim_out != self.dim_in:
            raise ValueError("dimension mismatch in composition")
        return Superoperator(inner.dim_in, self.dim_out, self.matrix @ inner.matrix)

    def tensor(self, other: "Superoperator") -> "Superoperator":
        """(self (x) other)(A (x) B) = self(A) (x) other(B)."""
        o1, i1, o2, i2 = self.dim_out, self.dim_in, other.dim_out, other.dim_in
        s = self.matrix.reshape(o1, o1, i1, i1)
        t = other.matrix.reshape(o2, o2, i2, i2)
        r = np.einsum("abce,ABCE->aAbBcCeE", s, t)
        return Superoperator(i1 * i2, o1 * o2, r.reshape((o1 * o2) ** 2, (i1 * i2) ** 2))

    @classmethod
    def from_function(cls, f: Callable[[np.ndarray], np.ndarray], dim_in: int, dim_out: int):
        """Tabulate a linear map by its action on matrix units."""
        cols = []
        for k in range(dim_in * dim_in):
            e = np.zeros(dim_in * dim_in, dtype=complex)
            e[k] = 1.0
            out = np.asarray(f(e.reshape(dim_in, dim_in)), dtype=complex)
            cols.append(out.reshape(-1))
        return cls(dim_in, dim_out, np.stack(cols, axis=1))

    @classmethod
    def from_kraus(cls, kraus: Sequence[np.ndarray]):
        """A -> sum_k K A K^dag."""
        ks = [np.asarray(k, dtype=complex) for k in kraus]
        dout, din = ks[0].shape
        m = sum(np.kron(k, k.conj()) for k in ks)
        return cls(din, dout, m)

    @classmethod
    def identity(cls, d: int):
        return cls(d, d, np.eye(d * d, dtype=complex))

    @classmethod
    def trace(cls, d: int):
        """The trace functional as a map into 1x1 operators."""
        return cls(d, 1, np.eye(d, dtype=complex).reshape(1, -1))


def _pair_superoperators(iso: Isometry) -> tuple[Superoperator, Superoperator]:
    t = iso.tensor
    db, dc, da = t.shape
    sb = np.einsum("bci,Bcj->bBij", t, t.conj()).reshape(db * db, da * da)
    sc = np.einsum("bci,bCj->cCij", t, t.conj()).reshape(dc * dc, da * da)
    return Superoperator(da, db, sb), Superoperator(da, dc, sc)


@dataclass(frozen=True)
class ChannelPair:
    """Complementary pair B(A) = Tr_c JAJ^dag, C(A) = Tr_b JAJ^dag."""

    iso: Isometry
    B: Superoperator = field(repr=False)
    C: Superoperator = field(repr=False)

    @property
    def d_a(self) -> int:
        return self.iso.d_a

    def swapped(self) -> "ChannelPair":
        return make_pair(self.iso.swapped())


def make_pair(iso: Isometry) -> ChannelPair:
    """Build the complementary pair induced by ``iso``."""
    if isometry_defect(iso.matrix) > ISO_TOL:
        raise ValueError("isometry condition violated")
    b, c = _pair_superoperators(iso)
    return ChannelPair(iso, b, c)


@dataclass(frozen=True)
class PDI:
    """Projective decomposition of the identity."""

    projectors: tuple

    def __post_init__(self):
        ps = tuple(as_matrix(p) for p in self.projectors)
        if not ps:
            raise ValueError("a PDI needs at least one projector")
        d = ps[0].shape[0]
        total = np.zeros((d, d), dtype=complex)
        for i, p in enumerate(ps):
            if p.shape != (d, d):
                raise ValueError("projectors must share one space")
            if np.max(np.abs(p - p.conj().T)) > ISO_TOL or np.max(np.abs(p @ p - p)) > ISO_TOL:
                raise ValueError(f"projector {i} is not an orthogonal projector")
            for q in ps[:i]:
                if np.max(np.abs(p @ q)) > ISO_TOL:
                    raise ValueError("projectors are not mutually orthogonal")
            total += p
        if np.max(np.abs(total - np.eye(d))) > ISO_TOL:
            raise ValueError("projectors do not sum to the identity")
        object.__setattr__(self, "projectors", ps)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def __len__(self) -> int:
        return len(self.projectors)

    def __getitem__(self, j: int) -> np.ndarray:
        return self.projectors[j]

    @classmethod
    def blocks(cls, sizes: Sequence[int]) -> "PDI":
        """Diagonal projectors onto consecutive coordinate blocks."""
        d = int(sum(sizes))
        ps, start = [], 0
        for s in sizes:
            p = np.zeros((d, d), dtype=complex)
            p[start : start + s, start : start + s] = np.eye(s)
            ps.append(p)
            start += s
        return cls(tuple(ps))

    @classmethod
    def trivial(cls, d: int) -> "PDI":
        return cls((np.eye(d, dtype=complex),))


def _check_density(rho: np.ndarray, d: int) -> np.ndarray:
    rho = as_matrix(rho)
    if rho.shape != (d, d):
        raise ValueError(f"density operator must be {d}x{d}")
    if abs(np.trace(rho).real - 1.0) > SUM_TOL:
        raise ValueError("density operator must have unit trace")
    return rho


def entropy_bias(pair: ChannelPair, rho) -> float:
    """Delta(B, rho) = S(B(rho)) - S(C(rho)) in bits."""
    rho = _check_density(rho, pair.d_a)
    return von_neumann_entropy(pair.B(rho)) - von_neumann_entropy(pair.C(rho))


def batch_bias(pair: ChannelPair, rhos: np.ndarray) -> np.ndarray:
    """Entropy bias for a stack of density operators, without validation."""
    return batch_entropy(pair.B.apply_batch(rhos)) - batch_entropy(pair.C.apply_batch(rhos))


def concatenate(p1: ChannelPair, p2: ChannelPair) -> ChannelPair:
    """Pair generated by J = (J2 (x) I_c1) J1, with H_c = H_c1 (x) H_c2."""
    j1, j2 = p1.iso, p2.iso
    if j2.d_a != j1.d_b:
        raise ValueError("output of the first B must be the input of the second isometry")
    # t[b2, c2, c1, a] = sum_b1 J2[b2, c2, b1] J1[b1, c1, a]
    t = np.einsum("xyb,bca->xyca", j2.tensor, j1.tensor)
    m = t.transpose(0, 2, 1, 3).reshape(j2.d_b * j1.d_c * j2.d_c, j1.d_a)
    return make_pair(Isometry(m, j1.d_a, j2.d_b, j1.d_c * j2.d_c))


def _side(pair: ChannelPair, name: str) -> Superoperator:
    if name == "B":
        return pair.B
    if name == "C":
        return pair.C
    raise ValueError(f"unknown channel {name!r}")


def verify_degrading(pair: ChannelPair, d: Superoperator, direction: str = "B_to_C") -> float:
    """Residual max_E ||target(E) - d(source(E))||_2 over input matrix units.

    ``direction`` is ``"X_to_Y"`` with X, Y in {B, C}: ``d`` should map the
    output of X to the output of Y.
    """
    try:
        src_name, dst_name = direction.split("_to_")
    except ValueError:
        raise ValueError(f"bad direction {direction!r}") from None
    src, dst = _side(pair, src_name), _side(pair, dst_name)
    if d.dim_in != src.dim_out or d.dim_out != dst.dim_out:
        raise ValueError("degrading map dimensions do not match the pair")
    diff = dst.matrix - d.matrix @ src.matrix
    n, da = dst.dim_out, pair.d_a
    blocks = diff.T.reshape(da * da, n, n)
    return float(max(np.linalg.norm(b, 2) for b in blocks))


def build_concatenation_degrader(
    inner: Superoperator, which: str, pairs: tuple[ChannelPair, ChannelPair]
) -> Superoperator:
    """Degrading map C -> B for the concatenation of ``pairs``.

    ``first_antidegradable``: ``inner`` satisfies inner o C1 = B1 and
    D(F1 (x) F2) = Tr(F2) B2(inner(F1)).
    ``second_antidegradable``: ``inner`` satisfies inner o C2 = B2 and
    D(F1 (x) F2) = Tr(F1) inner(F2).
    """
    p1, p2 = pairs
    dc1, dc2 = p1.iso.d_c, p2.iso.d_c
    if which == "first_antidegradable":
        if inner.dim_in != dc1 or inner.dim_out != p1.iso.d_b:
            raise ValueError("inner map must send H_c1 to H_b1")
        return p2.B.compose(inner).tensor(Superoperator.trace(dc2))
    if which == "second_antidegradable":
        if inner.dim_in != dc2 or inner.dim_out != p2.iso.d_b:
            raise ValueError("inner map must send H_c2 to H_b2")
        return Superoperator.trace(dc1).tensor(inner)
    raise ValueError(f"unknown construction {which!r}")
