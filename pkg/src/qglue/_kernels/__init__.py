"""Entropy-bias kernels for the qubit models, compiled when available.

``BACKEND`` is ``"cython"`` or ``"python"``. Setting the environment variable
``QGLUE_PURE_PYTHON=1`` forces the numpy implementation.
"""
from __future__ import annotations

import os

import numpy as np

from . import _bloch_py

if os.environ.get("QGLUE_PURE_PYTHON", "") not in ("", "0"):
    _impl = _bloch_py
else:
    try:
        from . import _bloch_ext as _impl
    except ImportError:
        _impl = _bloch_py

BACKEND = "cython" if _impl is not _bloch_py else "python"

AXIS_MODELS = ("amplitude_z", "dephasing_z", "dephasing_x")
PLANE_MODELS = {"amplitude": 0, "dephasing": 1}


def _prep(*arrs):
    return [np.ascontiguousarray(np.atleast_1d(a), dtype=float) for a in arrs]


def axis_bias(model: str, p: float, lam: float, e_lo, e_hi, impl=None) -> np.ndarray:
    """Delta(B_g, rho) along a symmetry axis, with the point given by (1+t, 1-t)."""
    if model not in AXIS_MODELS:
        raise ValueError(f"unknown axis model {model!r}")
    lo, hi = _prep(e_lo, e_hi)
    lo, hi = np.broadcast_arrays(lo, hi)
    lo, hi = np.ascontiguousarray(lo), np.ascontiguousarray(hi)
    out = np.empty(lo.shape[0])
    getattr(impl or _impl, model)(float(p), float(lam), lo, hi, out)
    return out


def plane_bias(kind: str, p: float, lam: float, x, z, impl=None) -> np.ndarray:
    """Delta(B_g, rho(x, 0, z)); NaN outside the Bloch ball."""
    xs, zs = _prep(x, z)
    xs, zs = np.broadcast_arrays(xs, zs)
    xs, zs = np.ascontiguousarray(xs), np.ascontiguousarray(zs)
    out = np.empty(xs.shape[0])
    (impl or _impl).plane(PLANE_MODELS[kind], float(p), float(lam), xs, zs, out)
    return out
