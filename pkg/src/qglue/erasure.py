"""Erasure and generalized erasure channel pairs.

Block order: for B the inner block comes first and the flag [f] last; for C
the flag [e] (or the inner complement) comes first and the passthrough copy
of the input last.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import ChannelPair, Isometry, Superoperator, make_pair
from .gluing import _block_diagonal, glue_direct_sum


@dataclass(frozen=True)
class ErasureParams:
    lam: float
    d_a: int = 2

    def __post_init__(self):
        if not 0.0 <= self.lam <= 1.0:
            raise ValueError("erasure probability must lie in [0, 1]")
        if self.d_a < 2:
            raise ValueError("input dimension must be at least 2")


def perfect_iso(d: int) -> Isometry:
    """|psi> -> |psi>_b |e>_c with a one-dimensional complement."""
    return Isometry(np.eye(d, dtype=complex), d, d, 1)


def trace_iso(d: int) -> Isometry:
    """|psi> -> |f>_b |psi>_c, the complement of the perfect channel."""
    return Isometry(np.eye(d, dtype=complex), d, 1, d)


def erasure_iso(params: ErasureParams) -> Isometry:
    d = params.d_a
    return _block_diagonal([perfect_iso(d), trace_iso(d)], [1 - params.lam, params.lam])


def erasure_pair(params: ErasureParams) -> ChannelPair:
    """B = E^lam, C = E^(1-lam), glued block-diagonally from two perfect pairs."""
    return make_pair(erasure_iso(params))


def erasure_q1(params: ErasureParams) -> tuple[float, float]:
    """Closed-form (Q1(B), Q1(C)) in bits."""
    s = np.log2(params.d_a)
    return max(1 - 2 * params.lam, 0.0) * s, max(2 * params.lam - 1, 0.0) * s


def erasure_degrader(lam: float, d: int) -> Superoperator:
    """Degrading map of E^lam for lam <= 1/2, on H_a (+) [f] -> [e] (+) H_a.

    It erases the H_a block with probability mu = (1-2 lam)/(1-lam) and sends
    the flag to [e], so that it composes with B = E^lam to C = E^(1-lam).
    """
    if not 0.0 <= lam <= 0.5:
        raise ValueError("the erasure channel is degradable only for lam <= 1/2")
    mu = (1 - 2 * lam) / (1 - lam)
    kraus = []
    keep = np.zeros((d + 1, d + 1), dtype=complex)
    keep[1:, :d] = np.eye(d) * np.sqrt(1 - mu)
    kraus.append(keep)
    for i in range(d):
        k = np.zeros((d + 1, d + 1), dtype=complex)
        k[0, i] = np.sqrt(mu)
        kraus.append(k)
    flag = np.zeros((d + 1, d + 1), dtype=complex)
    flag[0, d] = 1.0
    kraus.append(flag)
    return Superoperator.from_kraus(kraus)


@dataclass(frozen=True)
class GeneralizedErasure:
    """(B_g, C_g): B_g = (1-lam) B1 (+) lam Tr(A)[f], C_g = (1-lam) C1 (+) lam A."""

    inner: Isometry
    lam: float
    assembled: ChannelPair

    @property
    def pair(self) -> ChannelPair:
        return self.assembled


def generalized_erasure_iso(inner: Isometry, lam: float) -> Isometry:
    if not 0.0 <= lam <= 1.0:
        raise ValueError("erasure probability must lie in [0, 1]")
    return _block_diagonal([inner, trace_iso(inner.d_a)], [1 - lam, lam])


def generalized_erasure(inner: Isometry, lam: float) -> GeneralizedErasure:
    return GeneralizedErasure(inner, float(lam), make_pair(generalized_erasure_iso(inner, lam)))


def flagged_extension(inner: Isometry) -> ChannelPair:
    """B1 on H_a and the identity on a trailing flag: H_a (+) [f] -> H_b1 (+) [f]."""
    return make_pair(glue_direct_sum([inner, perfect_iso(1)]))


def incomplete_erasure_composition(mu: float, lam: float) -> float:
    """Erasure probability eps = (1-lam) mu of C_g when C1 = E^mu."""
    if not (0.0 <= mu <= 1.0 and 0.0 <= lam <= 1.0):
        raise ValueError("mu and lam must lie in [0, 1]")
    return (1 - lam) * mu


def zero_capacity_interval(mu: float, lam: float) -> bool:
    """True iff Q1(C_g) = 0, i.e. lam <= 1 - 1/(2 mu)."""
    if mu <= 0:
        return True
    return lam <= 1 - 1 / (2 * mu)
