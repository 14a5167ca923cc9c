"""Small-epsilon asymptotics of the entropy bias.

Near a pure input the bias takes the form f(eps) = alpha eps ln(eps) + beta eps
with eps the distance to the pole (natural log, f in bits). Coefficients are
given for the amplitude ("ad") and dephrasure ("deph") models.

Two normalizations differ from the commonly quoted forms and were fixed by
fitting raw bias values:

* For Q1(C_g) the tail slope is alpha = lam / (2 ln 2). With that alpha the
  closed forms ``q1C_asymptote`` follow from the extremum formula exactly.
* delta_2 ~ Q1(B_g^(x)2)/2 carries the factor 1/2, so ``delta2_asymptote``
  is half of ``two_copy_asymptote``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from ._kernels import axis_bias
from .nonadditivity import ansatz_bias
from .qubit_models import g_curve, lambda0

LN2 = np.log(2.0)
WHICH = ("ad_q1B", "ad_q1C", "ad_delta2", "deph_q1B", "deph_q1C")


@dataclass(frozen=True)
class AsymptoticModel:
    alpha: float
    beta: float

    def f(self, eps):
        eps = np.asarray(eps, dtype=float)
        return self.alpha * eps * np.log(eps) + self.beta * eps

    @property
    def has_extremum(self) -> bool:
        return self.alpha != 0 and np.sign(self.alpha) == np.sign(self.beta)

    @property
    def is_maximum(self) -> bool:
        return self.alpha < 0


def extremum(model: AsymptoticModel) -> tuple[float, float]:
    """(eps_m, f(eps_m)) with eps_m = exp(-(1 + beta/alpha)), f(eps_m) = -alpha eps_m."""
    if not model.has_extremum:
        raise ValueError("alpha and beta must share a sign for an interior extremum")
    eps_m = float(np.exp(-(1.0 + model.beta / model.alpha)))
    return eps_m, -model.alpha * eps_m


# -- coefficient sets ---------------------------------------------------------


def ad_alpha(p: float, lam: float) -> float:
    """Tail slope of Delta(B_g) at z -> 1 for the amplitude model."""
    return (p * (1 - lam) + lam - 0.5) / LN2


def ad_q1b_coefficients(p: float) -> tuple[float, float, float]:
    """(alpha_1, beta_0, beta_1) with alpha = alpha_1 dl, beta = beta_0 + beta_1 dl."""
    a1 = -(1 - p) / LN2
    b0 = ((p * np.log(p)) / (1 - p) - np.log(1 - p)) / (4 * LN2)
    b1 = (1 - p) * (2 * b0 + 1 + 1 / LN2)
    return a1, b0, b1


def deph_q1b_coefficients(p: float) -> tuple[float, float, float]:
    q = 1 + (1 - 2 * p) ** 2
    a1 = -q / (2 * LN2)
    b0 = 2 * p * (1 - p) * np.log(4 * p * (1 - p)) / (q * LN2)
    b1 = (1 + LN2 - 2 * p * (1 - p) * (1 - np.log(2 * p * (1 - p)))) / LN2
    return a1, b0, b1


def ad_delta2_coefficients(p: float) -> tuple[float, float, float]:
    """(bbeta_0, bbeta_1, bbeta_2) of the sigma-ansatz two-copy tail; alpha_bar = 2 alpha."""
    lp, l1p, l1m = np.log(p), np.log1p(p), np.log1p(-p)
    bb0 = (
        -2 * LN2 * p + 4 * LN2 * p**2 + p * lp + (1 - p * (1 + 2 * p)) * l1p - 2 * (1 - p) ** 2 * l1m
    ) / (4 * LN2 * (1 - p) ** 2)
    bb1 = (
        2 * (1 - 2 * p) + 2 * p**2 * (1 + LN2) + p * lp - (1 - p) ** 2 * l1m - p * (1 + p) * l1p
    ) / ((1 - p) * LN2)
    bb2 = (p * np.log(4 * p) - (1 + p) * l1p) / LN2
    return bb0, bb1, bb2


def _q1c_alpha(lam: float) -> float:
    return lam / (2 * LN2)


def ad_q1c_model(p: float, lam: float) -> AsymptoticModel:
    a = _q1c_alpha(lam)
    b1 = -a * (1 - lam) / lam
    beta = -a * (1 + LN2) + b1 * np.log(p) + b1 * p
    return AsymptoticModel(a, beta)


def deph_q1c_model(p: float, lam: float) -> AsymptoticModel:
    a = _q1c_alpha(lam)
    b1 = -a * (1 - lam) / lam
    beta = -a * (1 + LN2) + b1 * np.log(p) - 2 * b1 * p * np.log(p) + b1 * p
    return AsymptoticModel(a, beta)


def delta_lambda(which: str, p: float, lam: float) -> float:
    """Distance below the model's Q1(B_g) zero line."""
    return (lambda0(p) if which.startswith("ad") else g_curve(p)) - lam


@dataclass(frozen=True)
class CoefficientSet:
    """One coefficient set evaluated at (p, lam), with the pole it describes.

    ``pole`` is +1 when eps = 1 - t (approach to t = 1) and -1 when
    eps = 1 + t. ``components`` holds the named ingredients.
    """

    which: str
    p: float
    lam: float
    model: AsymptoticModel
    pole: int
    components: dict


def coefficient_set(which: str, p: float, lam: float) -> CoefficientSet:
    if which not in WHICH:
        raise ValueError(f"unknown coefficient set {which!r}")
    if not 0.0 < p < 0.5:
        raise ValueError("coefficient sets are defined for 0 < p < 1/2")
    if which in ("ad_q1B", "deph_q1B", "ad_delta2"):
        dl = delta_lambda(which, p, lam)
        if which == "ad_delta2":
            a1 = ad_q1b_coefficients(p)[0]
            bb = ad_delta2_coefficients(p)
            model = AsymptoticModel(2 * a1 * dl, bb[0] + bb[1] * dl + bb[2] * dl**2)
            comps = {"alpha_1": a1, "bbeta_0": bb[0], "bbeta_1": bb[1], "bbeta_2": bb[2]}
        else:
            a1, b0, b1 = (ad_q1b_coefficients if which == "ad_q1B" else deph_q1b_coefficients)(p)
            model = AsymptoticModel(a1 * dl, b0 + b1 * dl)
            comps = {"alpha_1": a1, "beta_0": b0, "beta_1": b1}
        return CoefficientSet(which, p, lam, model, +1, comps)
    model = (ad_q1c_model if which == "ad_q1C" else deph_q1c_model)(p, lam)
    a = model.alpha
    b1 = -a * (1 - lam) / lam
    comps = {
        "alpha": a,
        "beta_0": -a * (1 + LN2),
        "beta_1": b1,
        "beta_2": 0.0 if which == "ad_q1C" else -2 * b1,
        "beta_3": b1,
    }
    return CoefficientSet(which, p, lam, model, -1, comps)


# -- closed-form estimates ----------------------------------------------------


def q1b_constants(which: str, p: float) -> tuple[float, float]:
    """(a(p), b(p)) of Q1(B_g) ~ a dl exp(-b/dl)."""
    a1, b0, b1 = (ad_q1b_coefficients if which == "ad" else deph_q1b_coefficients)(p)
    k = np.exp(-1 - b1 / a1)
    return -a1 * k, b0 / a1


def q1B_asymptote(which: str, p: float, delta_lambda: float) -> float:
    """Q1(B_g) ~ a(p) dl exp(-b(p)/dl) for small dl > 0."""
    if which not in ("ad", "deph"):
        raise ValueError("which must be 'ad' or 'deph'")
    if delta_lambda <= 0:
        return 0.0
    a, b = q1b_constants(which, p)
    return float(a * delta_lambda * np.exp(-b / delta_lambda))


def q1C_asymptote(which: str, p: float, lam: float) -> float:
    """Q1(C_g) for small p, 0 < lam <= 1/2."""
    if which not in ("ad", "deph"):
        raise ValueError("which must be 'ad' or 'deph'")
    if p == 0:
        return 0.0
    if which == "ad":
        expo = (p + np.log(p)) * (1 - lam) / lam
    else:
        expo = (p + (1 - 2 * p) * np.log(p)) * (1 - lam) / lam
    return float(lam / LN2 * np.exp(expo))


def two_copy_constants(p: float) -> tuple[float, float]:
    """(a_bar(p), b_bar(p)) of Q1(B_g^(x)2) ~ a_bar dl exp(-b_bar/dl)."""
    a1 = ad_q1b_coefficients(p)[0]
    bb0, bb1, _ = ad_delta2_coefficients(p)
    return -2 * a1 * np.exp(-1 - bb1 / (2 * a1)), bb0 / (2 * a1)


def two_copy_asymptote(p: float, delta_lambda: float) -> float:
    if delta_lambda <= 0:
        return 0.0
    a, b = two_copy_constants(p)
    return float(a * delta_lambda * np.exp(-b / delta_lambda))


def delta2_asymptote(p: float, delta_lambda: float) -> float:
    """delta_2 ~ Q1(B_g^(x)2)/2 for small dl."""
    return 0.5 * two_copy_asymptote(p, delta_lambda)


def ratio_R(p: float, delta_lambda: float) -> float:
    """Two-copy over twice single-copy tail maximum, exp[(beta/alpha)(1 - bbeta/(2 beta))]."""
    a1, b0, b1 = ad_q1b_coefficients(p)
    bb = ad_delta2_coefficients(p)
    dl = delta_lambda
    alpha, beta = a1 * dl, b0 + b1 * dl
    bbeta = bb[0] + bb[1] * dl + bb[2] * dl**2
    return float(np.exp((beta / alpha) * (1 - bbeta / (2 * beta))))


def two_copy_condition(p: float) -> float:
    """bbeta_0 / (2 beta_0); below 1 means the two-copy tail dominates."""
    return float(ad_delta2_coefficients(p)[0] / (2 * ad_q1b_coefficients(p)[1]))


# -- numerical cross-checks -------------------------------------------------


def fit_template(f: Callable[[np.ndarray], np.ndarray], eps) -> tuple[float, float]:
    """Least-squares (alpha, beta) from f(eps)/eps = alpha ln(eps) + beta."""
    eps = np.asarray(eps, dtype=float)
    y = np.asarray(f(eps), dtype=float) / eps
    a = np.vstack([np.log(eps), np.ones_like(eps)]).T
    alpha, beta = np.linalg.lstsq(a, y, rcond=None)[0]
    return float(alpha), float(beta)


def raw_bias(which: str, p: float, lam: float) -> Callable[[np.ndarray], np.ndarray]:
    """The exact bias as a function of eps for a coefficient set.

    For ``ad_delta2`` this is the two-copy bias along the sigma ansatz with
    weight eps on the symmetric Bell component.
    """
    if which == "ad_delta2":
        return lambda e: ansatz_bias("amplitude", p, lam, "sigma_eps", e)
    if which not in WHICH:
        raise ValueError(f"unknown coefficient set {which!r}")
    model = "amplitude_z" if which.startswith("ad") else ("dephasing_z" if which == "deph_q1B" else "dephasing_x")
    if which.endswith("q1B"):
        return lambda e: axis_bias(model, p, lam, 2.0 - e, e)
    return lambda e: axis_bias(model, p, lam, e, 2.0 - e)
