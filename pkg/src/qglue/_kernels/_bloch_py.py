"""Numpy implementation of the Bloch-axis and plane entropy-bias kernels.

Mirrors ``_bloch_ext`` function for function; used when the compiled module
is unavailable or ``QGLUE_PURE_PYTHON`` is set.
"""
from __future__ import annotations

import numpy as np

LN2 = np.log(2.0)


def h2(q):
    q = np.asarray(q, dtype=float)
    out = np.zeros_like(q)
    m = (q > 0) & (q < 1)
    qm = q[m]
    out[m] = (-qm * np.log(qm) - (1 - qm) * np.log1p(-qm)) / LN2
    return out


def hdiff(a, b, d):
    """h(a) - h(b) with a = b + d, accurate when |d| is small relative to b."""
    a, b, d = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (a, b, d)))
    out = h2(a) - h2(b)
    m = (b > 0) & (b < 1) & (np.abs(d) <= 0.5 * np.minimum(b, 1 - b))
    am, bm, dm = a[m], b[m], d[m]
    out[m] = (
        dm * np.log((1 - bm) / bm) - am * np.log1p(dm / bm) - (1 - am) * np.log1p(-dm / (1 - bm))
    ) / LN2
    return out


def small_eig(w):
    w = np.clip(np.asarray(w, dtype=float), 0.0, 1.0)
    return w / (2.0 * (1.0 + np.sqrt(1.0 - w)))


def amplitude_z(p, lam, e_lo, e_hi, out):
    s_in = 0.5 * np.minimum(e_lo, e_hi)
    lower = e_lo <= e_hi
    d = np.where(
        lower,
        hdiff(p + 0.5 * (1 - p) * e_lo, 0.5 * p * e_hi, 0.5 * e_lo),
        h2(0.5 * (1 - p) * e_hi) - h2(0.5 * p * e_hi),
    )
    out[:] = (1 - lam) * d - lam * h2(s_in)


def dephasing_z(p, lam, e_lo, e_hi, out):
    s_in = 0.5 * np.minimum(e_lo, e_hi)
    s_c = small_eig(4 * p * (1 - p) * e_lo * e_hi)
    out[:] = (1 - 2 * lam) * h2(s_in) - (1 - lam) * h2(s_c)


def dephasing_x(p, lam, e_lo, e_hi, out):
    e = np.minimum(e_lo, e_hi)
    d = 0.5 * (1 - 2 * p) * e
    out[:] = (1 - lam) * hdiff(p + d, p, d) - lam * h2(0.5 * e)


def plane(model, p, lam, x, z, out):
    w = 1.0 - x * x - z * z
    outside = w < -1e-15
    w = np.maximum(w, 0.0)
    if model == 0:
        u = 1.0 - z
        wb = (1 - p) * (w + p * u * u)
        wc = p * (w + (1 - p) * u * u)
    else:
        wb = w + 4 * p * (1 - p) * x * x
        wc = 4 * p * (1 - p) * (1 - z * z)
    res = (1 - lam) * (h2(small_eig(wb)) - h2(small_eig(wc))) - lam * h2(small_eig(w))
    res[outside] = np.nan
    out[:] = res
