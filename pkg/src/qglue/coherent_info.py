"""Channel coherent information Q1 by optimizing the entropy bias.

The qubit models use one-dimensional scans along their symmetry axes. A point
on an axis is carried as (e_lo, e_hi) = (1 + t, 1 - t). The scan combines a
uniform grid in t with log-spaced grids approaching both poles, so extrema
sitting exponentially close to a pure state are still resolved.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Callable, NamedTuple, Optional

import numpy as np
from scipy.optimize import minimize

from ._kernels import axis_bias
from .channels import ChannelPair
from .erasure import generalized_erasure
from .qubit_models import amplitude_damping_iso, bloch_to_rho, dephasing_iso

POS_THRESHOLD = 1e-10
OPT_TOL = 1e-9
_GOLD = (np.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class OptimizerConfig:
    """Knobs shared by every optimizer in the package.

    ``tail_points`` log-spaced points per pole cover distances from
    ``10**tail_min_exp`` to ``10**tail_max_exp``. ``polish_count`` is the
    number of best multistart candidates refined by a local search.
    """

    coarse_grid_points: int = 2001
    refine_tol: float = 1e-12
    multistart_count: int = 32
    seed: int = 0
    tail_points: int = 601
    tail_min_exp: float = -300.0
    tail_max_exp: float = -2.0
    polish_count: int = 6

    def __post_init__(self):
        if self.coarse_grid_points < 3 or self.multistart_count < 1 or self.tail_points < 2:
            raise ValueError("counts must be positive (coarse grid needs >= 3 points)")
        if self.polish_count < 1:
            raise ValueError("polish_count must be positive")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be positive")
        if not self.tail_min_exp < self.tail_max_exp < 0:
            raise ValueError("tail exponents must satisfy min < max < 0")


DEFAULT_CONFIG = OptimizerConfig()


@dataclass(frozen=True)
class CoherentInfoResult:
    q1_B: float
    q1_C: float
    argmax_state: np.ndarray = field(repr=False)
    argmin_state: np.ndarray = field(repr=False)
    evaluations: int
    method: str
    argmax_param: Optional[float] = None
    argmin_param: Optional[float] = None
    seed: Optional[int] = None


def golden_section(f: Callable[[float], float], a: float, b: float, tol: float):
    """Maximize ``f`` on [a, b]; returns (x, f(x), evaluations)."""
    c = b - _GOLD * (b - a)
    d = a + _GOLD * (b - a)
    fc, fd = f(c), f(d)
    n = 2
    while abs(b - a) > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _GOLD * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLD * (b - a)
            fd = f(d)
        n += 1
        if n > 400:
            break
    return (c, fc, n) if fc >= fd else (d, fd, n)


class _Block(NamedTuple):
    coords: np.ndarray
    to_e: Callable[[np.ndarray], tuple]


def _axis_blocks(cfg: OptimizerConfig) -> list[_Block]:
    n = cfg.coarse_grid_points
    t = np.linspace(-1.0, 1.0, n)
    u = np.linspace(cfg.tail_min_exp, cfg.tail_max_exp, cfg.tail_points)

    def lin(c):
        c = np.atleast_1d(c)
        return 1.0 + c, 1.0 - c

    def top(c):
        e = 10.0 ** np.atleast_1d(c)
        return 2.0 - e, e

    def bottom(c):
        e = 10.0 ** np.atleast_1d(c)
        return e, 2.0 - e

    return [_Block(t, lin), _Block(u, top), _Block(u, bottom)]


class AxisOptimum(NamedTuple):
    value: float
    e_lo: float
    e_hi: float
    evaluations: int

    @property
    def t(self) -> float:
        return 0.5 * (self.e_lo - self.e_hi)


def optimize_axis(
    evaluate: Callable[[np.ndarray, np.ndarray], np.ndarray],
    maximize: bool,
    cfg: OptimizerConfig = DEFAULT_CONFIG,
) -> AxisOptimum:
    """Global extremum of ``evaluate(e_lo, e_hi)`` over the axis t in [-1, 1]."""
    sign = 1.0 if maximize else -1.0
    best = None
    nevals = 0
    for block in _axis_blocks(cfg):
        v = sign * evaluate(*block.to_e(block.coords))
        nevals += v.size
        k = int(np.nanargmax(v))
        if best is None or v[k] > best[0]:
            best = (v[k], block, k)
    val, block, k = best
    c = block.coords
    a, b = c[max(k - 1, 0)], c[min(k + 1, c.size - 1)]

    def g(x):
        return sign * float(evaluate(*block.to_e(x))[0])

    x, fx, ne = golden_section(g, a, b, cfg.refine_tol)
    nevals += ne
    if not fx > val:
        x, fx = c[k], val
    lo, hi = block.to_e(x)
    return AxisOptimum(sign * fx, float(lo[0]), float(hi[0]), nevals)


def _axis_state(t: float, axis: str) -> np.ndarray:
    r = (t, 0.0, 0.0) if axis == "x" else (0.0, 0.0, t)
    return bloch_to_rho(np.clip(r, -1.0, 1.0))


def q1_amplitude_glued(p: float, lam: float, cfg: OptimizerConfig = DEFAULT_CONFIG) -> CoherentInfoResult:
    """Q1 of (B_g, C_g) with an amplitude damping inner pair, via the z axis."""
    _check_unit(p, lam)
    f = lambda lo, hi: axis_bias("amplitude_z", p, lam, lo, hi)
    hi_opt = optimize_axis(f, True, cfg)
    lo_opt = optimize_axis(f, False, cfg)
    return CoherentInfoResult(
        q1_B=max(hi_opt.value, 0.0),
        q1_C=max(-lo_opt.value, 0.0),
        argmax_state=_axis_state(hi_opt.t, "z"),
        argmin_state=_axis_state(lo_opt.t, "z"),
        evaluations=hi_opt.evaluations + lo_opt.evaluations,
        method="axis_scan_1d",
        argmax_param=hi_opt.t,
        argmin_param=lo_opt.t,
        seed=cfg.seed,
    )


def q1_dephrasure(p: float, lam: float, cfg: OptimizerConfig = DEFAULT_CONFIG) -> CoherentInfoResult:
    """Q1 of the dephrasure pair: maximum on the z axis, minimum on the x axis.

    The bias is even in z and in x, so the maximizer is reported with z >= 0
    and the minimizer with x <= 0.
    """
    _check_unit(p, lam)
    if p > 0.5:
        raise ValueError("dephrasure uses the canonical range 0 <= p <= 1/2")
    hi_opt = optimize_axis(lambda lo, hi: axis_bias("dephasing_z", p, lam, lo, hi), True, cfg)
    lo_opt = optimize_axis(lambda lo, hi: axis_bias("dephasing_x", p, lam, lo, hi), False, cfg)
    z, x = abs(hi_opt.t), -abs(lo_opt.t)
    return CoherentInfoResult(
        q1_B=max(hi_opt.value, 0.0),
        q1_C=max(-lo_opt.value, 0.0),
        argmax_state=_axis_state(z, "z"),
        argmin_state=_axis_state(x, "x"),
        evaluations=hi_opt.evaluations + lo_opt.evaluations,
        method="axis_scan_1d",
        argmax_param=z,
        argmin_param=x,
        seed=cfg.seed,
    )


def glued_pair(kind: str, p: float, lam: float) -> ChannelPair:
    """Matrix representation of (B_g, C_g) for the qubit models."""
    inner = amplitude_damping_iso(p) if kind == "amplitude" else dephasing_iso(p)
    return generalized_erasure(inner, lam).assembled


def _check_unit(p, lam):
    if not (0.0 <= p <= 1.0 and 0.0 <= lam <= 1.0):
        raise ValueError("p and lambda must lie in [0, 1]")


# -- generic multistart ----------------------------------------------------


def _n_params(d: int) -> int:
    return d * d


def params_to_rho(theta: np.ndarray, d: int) -> np.ndarray:
    """rho = M M^dag / Tr(M M^dag), M lower triangular with real diagonal."""
    m = np.zeros((d, d), dtype=complex)
    m[np.diag_indices(d)] = theta[:d]
    il = np.tril_indices(d, -1)
    k = il[0].size
    m[il] = theta[d : d + k] + 1j * theta[d + k :]
    r = m @ m.conj().T
    tr = np.trace(r).real
    if tr <= 0:
        return np.eye(d, dtype=complex) / d
    return r / tr


def _entropy_fast(m: np.ndarray) -> float:
    e = np.linalg.eigvalsh(m)
    e = e[e > 0.0]
    return float(-np.dot(e, np.log2(e)))


def _bias_fn(pair: ChannelPair):
    d = pair.d_a
    db, dc = pair.B.dim_out, pair.C.dim_out
    # both outputs from one matrix product
    stacked = np.vstack([pair.B.matrix, pair.C.matrix])
    diag = np.diag_indices(d)
    il = np.tril_indices(d, -1)
    k = il[0].size

    def bias(theta):
        m = np.zeros((d, d), dtype=complex)
        m[diag] = theta[:d]
        m[il] = theta[d : d + k] + 1j * theta[d + k :]
        r = m @ m.conj().T
        tr = r.trace().real
        if tr <= 0.0:
            return 0.0
        out = stacked @ (r.reshape(-1) / tr)
        return _entropy_fast(out[: db * db].reshape(db, db)) - _entropy_fast(
            out[db * db :].reshape(dc, dc)
        )

    return bias


def _starts(d: int, cfg: OptimizerConfig) -> list[np.ndarray]:
    k = _n_params(d)
    fixed = []
    t = np.zeros(k)
    t[:d] = 1.0
    fixed.append(t)
    for i in range(d):
        t = np.zeros(k)
        t[i] = 1.0
        fixed.append(t)
    rng = np.random.default_rng(cfg.seed)
    rand = [rng.standard_normal(k) for _ in range(cfg.multistart_count)]
    return fixed + rand


def q1_generic(pair: ChannelPair, cfg: OptimizerConfig = DEFAULT_CONFIG) -> CoherentInfoResult:
    """Multistart Powell search over density operators for max and min of Delta."""
    d = pair.d_a
    if d > 8:
        raise ValueError("generic optimization supports input dimension <= 8")
    bias = _bias_fn(pair)
    starts = _starts(d, cfg)
    base = np.array([bias(s) for s in starts])
    nevals = len(starts)
    out = {}
    for sign in (1.0, -1.0):
        order = np.argsort(-sign * base)
        cand = [starts[0]] + [starts[i] for i in order[: cfg.polish_count] if i != 0]
        best_v, best_t = sign * base[order[0]], starts[order[0]]
        for t0 in cand:
            res = minimize(
                lambda t: -sign * bias(t),
                t0,
                method="Powell",
                options={"xtol": 1e-10, "ftol": 1e-14, "maxfev": 40000},
            )
            nevals += res.nfev
            if -res.fun > best_v:
                best_v, best_t = -res.fun, res.x
        out[sign] = (sign * best_v, best_t)
    vmax, tmax = out[1.0]
    vmin, tmin = out[-1.0]
    return CoherentInfoResult(
        q1_B=max(vmax, 0.0),
        q1_C=max(-vmin, 0.0),
        argmax_state=params_to_rho(tmax, d),
        argmin_state=params_to_rho(tmin, d),
        evaluations=nevals,
        method="multistart_generic",
        seed=cfg.seed,
    )


# -- boundaries --------------------------------------------------------------


def tail_positive(p: float, lam: float, exponents=np.linspace(-300.0, -20.0, 281)) -> bool:
    """Probe the bias deep in the z -> 1 tail, where positivity appears first."""
    e = 10.0**exponents
    return bool(np.any(axis_bias("amplitude_z", p, lam, 2.0 - e, e) > 0.0))


def boundary_scan_lambda0(
    p: float,
    cfg: OptimizerConfig = DEFAULT_CONFIG,
    assisted: bool = False,
    resolution: float = 1e-5,
) -> float:
    """Bisection for the largest lambda with Q1(B_g) > POS_THRESHOLD.

    With ``assisted`` the detector also counts a positive bias anywhere in
    the far tail near z = 1, which tracks the closed form much more closely.
    """
    if not 0.0 <= p < 0.5:
        raise ValueError("boundary scan needs 0 <= p < 1/2")

    def positive(lam):
        if assisted and tail_positive(p, lam):
            return True
        return q1_amplitude_glued(p, lam, cfg).q1_B > POS_THRESHOLD

    lo, hi = 0.0, 0.5
    if not positive(lo):
        return 0.0
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if positive(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def with_seed(cfg: OptimizerConfig, seed: int) -> OptimizerConfig:
    return replace(cfg, seed=seed)
