"""Two-copy nonadditivity estimates from low-parameter ansatz input states.

Every ansatz family below is affine in its parameter, so the channel outputs
are tabulated once per (p, lambda) and then scanned in batch.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Optional

import numpy as np

from .channels import ChannelPair, Isometry, make_pair
from .coherent_info import (
    DEFAULT_CONFIG,
    POS_THRESHOLD,
    OptimizerConfig,
    glued_pair,
    optimize_axis,
    q1_amplitude_glued,
    q1_dephrasure,
    q1_generic,
)
from .numkernel import batch_entropy
from .qubit_models import lambda0

FAMILIES = ("sigma_eps", "tau_product", "repetition_eta", "zeta_mix")
_DOMAINS = {
    "sigma_eps": (0.0, 1.0),
    "tau_product": (0.0, 1.0),
    "repetition_eta": (0.0, 1.0),
    "zeta_mix": (-1.0, 1.0),
}
_PHI = np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0)


@dataclass(frozen=True)
class AnsatzParam:
    family: str
    value: float

    def __post_init__(self):
        if self.family == "custom":
            return
        if self.family not in _DOMAINS:
            raise ValueError(f"unknown ansatz family {self.family!r}")
        lo, hi = _DOMAINS[self.family]
        if not lo <= self.value <= hi:
            raise ValueError(f"{self.family} parameter {self.value} outside [{lo}, {hi}]")


@dataclass(frozen=True)
class NonAddResult:
    """Ansatz-based nonadditivity estimate.

    ``delta`` is ansatz_value/2 - q1_single and may be negative when the
    ansatz does not beat product inputs; ``improving`` records which case
    holds. ``q1_two_copy_lower_bound`` never drops below 2 q1_single.
    """

    delta: float
    best_ansatz: AnsatzParam
    q1_single: float
    q1_two_copy_lower_bound: float
    ansatz_value: float
    improving: bool
    label: str = "delta_2"


def two_copy_iso(iso: Isometry) -> Isometry:
    """J (x) J with outputs regrouped as (b (x) b) (x) (c (x) c)."""
    db, dc, da = iso.d_b, iso.d_c, iso.d_a
    if db * db > 36 * 36 or dc * dc > 36 * 36 or db > 36 or dc > 36:
        raise ValueError("two-copy dimensions exceed the practical bound")
    t = np.kron(iso.matrix, iso.matrix).reshape(db, dc, db, dc, da * da)
    m = t.transpose(0, 2, 1, 3, 4).reshape(db * db * dc * dc, da * da)
    return Isometry(m, da * da, db * db, dc * dc)


def two_copy_pair(single: ChannelPair) -> ChannelPair:
    return make_pair(two_copy_iso(single.iso))


def _endpoints(family: str) -> tuple[np.ndarray, np.ndarray]:
    """States at the two ends of the family's parameter range."""
    e00 = np.zeros((4, 4), dtype=complex)
    e00[0, 0] = 1.0
    e11 = np.zeros((4, 4), dtype=complex)
    e11[3, 3] = 1.0
    if family == "sigma_eps":
        return e00, np.outer(_PHI, _PHI).astype(complex)
    if family == "repetition_eta":
        return e11, e00
    if family == "zeta_mix":
        # rho(zeta) = diag(1+zeta, 1-zeta, 1-zeta, 1+zeta)/4
        return np.diag([0.0, 0.5, 0.5, 0.0]).astype(complex), np.diag([0.5, 0.0, 0.0, 0.5]).astype(complex)
    raise ValueError(f"family {family!r} is not affine")


def ansatz_state(a: AnsatzParam) -> np.ndarray:
    """Two-qubit density operator for an ansatz parameter."""
    if a.family == "tau_product":
        r = np.diag([1.0 - a.value, a.value]).astype(complex)
        return np.kron(r, r)
    r0, r1 = _endpoints(a.family)
    w = 0.5 * (1.0 + a.value) if a.family == "zeta_mix" else a.value
    return (1 - w) * r0 + w * r1


@lru_cache(maxsize=64)
def _two_copy_glued(kind: str, p: float, lam: float) -> ChannelPair:
    return two_copy_pair(glued_pair(kind, p, lam))


def _ansatz_scan(pair2: ChannelPair, family: str, cfg: OptimizerConfig):
    """Maximize Delta(pair2, rho(w)) along an affine family, w in [0, 1]."""
    r0, r1 = _endpoints(family)
    b0, b1 = pair2.B(r0), pair2.B(r1)
    c0, c1 = pair2.C(r0), pair2.C(r1)

    def evaluate(lo, hi):
        # weight on r1 is lo/2, on r0 is hi/2
        w1 = (0.5 * lo)[:, None, None]
        w0 = (0.5 * hi)[:, None, None]
        return batch_entropy(w0 * b0 + w1 * b1) - batch_entropy(w0 * c0 + w1 * c1)

    # eigensolver noise floor makes deeper tails meaningless
    opt = optimize_axis(evaluate, True, replace(cfg, tail_min_exp=-14.0))
    w = 0.5 * opt.e_lo
    if family == "zeta_mix":
        value = 2.0 * w - 1.0
    else:
        value = w
    return opt.value, float(np.clip(value, *_DOMAINS[family]))


def ansatz_bias(kind: str, p: float, lam: float, family: str, w) -> np.ndarray:
    """Delta(B_g^(x)2, rho) along an affine family at weights w on its far endpoint."""
    pair2 = _two_copy_glued(kind, float(p), float(lam))
    r0, r1 = _endpoints(family)
    w = np.atleast_1d(np.asarray(w, dtype=float))[:, None, None]
    rhos = (1 - w) * r0 + w * r1
    return batch_entropy(pair2.B.apply_batch(rhos)) - batch_entropy(pair2.C.apply_batch(rhos))


def _result(q1: float, ansatz: float, family: str, param: float, label: str) -> NonAddResult:
    return NonAddResult(
        delta=ansatz / 2.0 - q1,
        best_ansatz=AnsatzParam(family, param),
        q1_single=q1,
        q1_two_copy_lower_bound=max(ansatz, 2.0 * q1),
        ansatz_value=ansatz,
        improving=ansatz > 2.0 * q1,
        label=label,
    )


def delta2_amplitude(p: float, lam: float, cfg: OptimizerConfig = DEFAULT_CONFIG) -> NonAddResult:
    """delta_2 estimate for the amplitude model under the sigma(eps) ansatz."""
    q1 = q1_amplitude_glued(p, lam, cfg).q1_B
    val, eps = _ansatz_scan(_two_copy_glued("amplitude", float(p), float(lam)), "sigma_eps", cfg)
    return _result(q1, val, "sigma_eps", eps, "delta_2")


def delta2_star_dephrasure(
    p: float, lam: float, cfg: OptimizerConfig = DEFAULT_CONFIG, family: str = "zeta_mix"
) -> NonAddResult:
    """delta_2* for the dephrasure model (zeta ansatz by default, or repetition_eta)."""
    if not 0.0 < p < 0.5:
        raise ValueError("delta2_star_dephrasure needs 0 < p < 1/2")
    if family not in ("zeta_mix", "repetition_eta"):
        raise ValueError("dephrasure ansatz must be zeta_mix or repetition_eta")
    q1 = q1_dephrasure(p, lam, cfg).q1_B
    val, param = _ansatz_scan(_two_copy_glued("dephasing", float(p), float(lam)), family, cfg)
    return _result(q1, val, family, param, "delta_2_star")


def boundary_scan_lambda1(
    p: float,
    cfg: OptimizerConfig = DEFAULT_CONFIG,
    coarse: int = 40,
    resolution: float = 1e-5,
) -> float:
    """Lower edge lambda_1 of the window where the sigma ansatz gives delta_2 > POS_THRESHOLD.

    A coarse scan in delta-lambda locates the peak, then bisection walks down
    in lambda to the zero crossing.
    """
    if not 0.0 < p < 0.5:
        raise ValueError("boundary scan needs 0 < p < 1/2")
    l0 = lambda0(p)
    lams = l0 * (1.0 - np.arange(1, coarse) / coarse)
    deltas = np.array([delta2_amplitude(p, lam, cfg).delta for lam in lams])
    k = int(np.argmax(deltas))
    if deltas[k] <= POS_THRESHOLD:
        raise RuntimeError(f"no positive delta_2 found below lambda0 at p={p}")
    below = np.flatnonzero(deltas[k:] <= POS_THRESHOLD)
    hi = lams[k]
    lo = lams[k + below[0]] if below.size else 0.0
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if delta2_amplitude(p, mid, cfg).delta > POS_THRESHOLD:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def pair_ansatz_bound(n: int, p: float, lam: float, cfg: OptimizerConfig = DEFAULT_CONFIG) -> float:
    """Per-copy lower bound on Q1(B_g^(x)n) from sigma pairs plus one spare copy for odd n."""
    if n < 2:
        raise ValueError("n must be at least 2")
    r = delta2_amplitude(p, lam, cfg)
    pair_value = r.q1_two_copy_lower_bound
    if n % 2 == 0:
        return pair_value / 2.0
    return ((n - 1) / 2.0 * pair_value + r.q1_single) / n


def exhaustive_two_copy(
    kind: str, p: float, lam: float, cfg: Optional[OptimizerConfig] = None
) -> float:
    """Generic multistart Q1 of the two-copy pair; slow, for spot checks."""
    cfg = cfg or replace(DEFAULT_CONFIG, multistart_count=8, polish_count=3)
    return q1_generic(_two_copy_glued(kind, float(p), float(lam)), cfg).q1_B
