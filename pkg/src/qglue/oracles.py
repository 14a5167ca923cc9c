"""Brute-force reference optimizers used to cross-check the axis scans.

These evaluate the entropy bias through the full superoperator matrices of
(B_g, C_g) and a batched Hermitian eigensolver, sharing no formulas with the
axis kernels.
"""
from __future__ import annotations

from typing import NamedTuple

import numpy as np

from .channels import ChannelPair
from .numkernel import batch_entropy
from .qubit_models import I2, SX, SZ


class GridOptimum(NamedTuple):
    value: float
    x: float
    z: float
    points: int


def _bloch_batch(x: np.ndarray, z: np.ndarray) -> np.ndarray:
    return 0.5 * (I2 + x[:, None, None] * SX + z[:, None, None] * SZ)


def bias_on_points(pair: ChannelPair, x: np.ndarray, z: np.ndarray) -> np.ndarray:
    rhos = _bloch_batch(np.asarray(x, float), np.asarray(z, float))
    return batch_entropy(pair.B.apply_batch(rhos)) - batch_entropy(pair.C.apply_batch(rhos))


def plane_grid_optimum(
    pair: ChannelPair, n: int = 2001, maximize: bool = True, chunk: int = 200_000
) -> GridOptimum:
    """Extremum of Delta(rho(x, 0, z)) over an n x n grid of the (x, z) disc."""
    g = np.linspace(-1.0, 1.0, n)
    xx, zz = np.meshgrid(g, g, indexing="ij")
    inside = xx**2 + zz**2 <= 1.0 + 1e-15
    xs, zs = xx[inside], zz[inside]
    sign = 1.0 if maximize else -1.0
    best = (-np.inf, 0.0, 0.0)
    for s in range(0, xs.size, chunk):
        v = sign * bias_on_points(pair, xs[s : s + chunk], zs[s : s + chunk])
        k = int(np.argmax(v))
        if v[k] > best[0]:
            best = (v[k], xs[s + k], zs[s + k])
    return GridOptimum(sign * best[0], float(best[1]), float(best[2]), int(xs.size))
