"""Amplitude damping and dephasing qubit models, Bloch utilities and boundary curves."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .channels import Isometry, Superoperator

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)

KINDS = ("amplitude", "dephasing")


@dataclass(frozen=True)
class BlochVector:
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        if self.x**2 + self.y**2 + self.z**2 > 1 + 1e-12:
            raise ValueError("Bloch vector lies outside the unit ball")

    def as_array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])


@dataclass(frozen=True)
class DampingParams:
    p: float
    kind: str = "amplitude"

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        if not 0.0 <= self.p <= 1.0:
            raise ValueError("p must lie in [0, 1]")

    def isometry(self) -> Isometry:
        if self.kind == "amplitude":
            return amplitude_damping_iso(self.p)
        return dephasing_iso(self.p)


def bloch_to_rho(r) -> np.ndarray:
    """rho = (I + x X + y Y + z Z)/2."""
    if not isinstance(r, BlochVector):
        r = BlochVector(*map(float, r))
    return 0.5 * (I2 + r.x * SX + r.y * SY + r.z * SZ)


def rho_to_bloch(rho) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    return np.real([np.trace(rho @ s) for s in (SX, SY, SZ)])


def amplitude_damping_iso(p: float) -> Isometry:
    """J|0> = |0>|1>,  J|1> = sqrt(1-p)|1>|1> + sqrt(p)|0>|0> (b (x) c)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    j = np.zeros((4, 2), dtype=complex)
    j[1, 0] = 1.0
    j[3, 1] = np.sqrt(1 - p)
    j[0, 1] = np.sqrt(p)
    return Isometry(j, 2, 2, 2)


def dephasing_iso(p: float) -> Isometry:
    """J|0> = |0>|phi0>, J|1> = |1>|phi1>, phi0/1 = sqrt(1-p)|+> +- sqrt(p)|->."""
    if not 0.0 <= p <= 1.0:
        raise ValueError("p must lie in [0, 1]")
    plus = np.array([1, 1]) / np.sqrt(2)
    minus = np.array([1, -1]) / np.sqrt(2)
    phi0 = np.sqrt(1 - p) * plus + np.sqrt(p) * minus
    phi1 = np.sqrt(1 - p) * plus - np.sqrt(p) * minus
    j = np.zeros((4, 2), dtype=complex)
    j[:, 0] = np.kron([1, 0], phi0)
    j[:, 1] = np.kron([0, 1], phi1)
    return Isometry(j, 2, 2, 2)


def amplitude_bloch_maps(p: float, r) -> tuple[np.ndarray, np.ndarray]:
    """Bloch vectors of B1(rho) and C1(rho) for amplitude damping."""
    x, y, z = r
    s, t = np.sqrt(1 - p), np.sqrt(p)
    return np.array([s * x, s * y, (1 - p) * z + p]), np.array([t * x, -t * y, p - p * z - 1])


def dephasing_bloch_maps(p: float, r) -> tuple[np.ndarray, np.ndarray]:
    """Bloch vectors of B1(rho) and C1(rho) for dephasing."""
    x, y, z = r
    q = 1 - 2 * p
    return np.array([q * x, q * y, z]), np.array([q, 0.0, 2 * np.sqrt(p * (1 - p)) * z])


def amplitude_degrader(p: float) -> Superoperator:
    """Map D with D o C1 = B1 for amplitude damping, valid for p >= 1/2.

    C1 is amplitude damping with parameter 1-p after an X flip, and damping
    parameters compose through the product of transmissions.
    """
    if p < 0.5:
        raise ValueError("amplitude damping is antidegradable only for p >= 1/2")
    q = (2 * p - 1) / p
    k0 = np.array([[1, 0], [0, np.sqrt(1 - q)]], dtype=complex)
    k1 = np.array([[0, np.sqrt(q)], [0, 0]], dtype=complex)
    return Superoperator.from_kraus([k0 @ SX, k1 @ SX])


def lambda0(p: float) -> float:
    """Upper boundary of Q1(B_g) > 0 for the amplitude model."""
    if not 0.0 <= p < 1.0:
        raise ValueError("lambda0 needs 0 <= p < 1")
    return (1 - 2 * p) / (2 - 2 * p)


def j_curve(p: float) -> float:
    """Dephrasure lambda above which the Q1(B_g) maximizer leaves z = 0."""
    if not 0.0 < p < 0.5:
        raise ValueError("j_curve needs 0 < p < 1/2")
    q = 2 * p * (1 - p) * np.log((1 - p) / p)
    return float((1 - 2 * p - q) / (2 - 4 * p - q))


def g_curve(p: float) -> float:
    """Dephrasure lambda above which Q1(B_g) vanishes."""
    if not 0.0 <= p <= 0.5:
        raise ValueError("g_curve needs 0 <= p <= 1/2")
    q = (1 - 2 * p) ** 2
    return q / (1 + q)


def antidegradable_region(kind: str, p: float, lam: float) -> bool:
    """Sufficient condition for B_g to be antidegradable."""
    if kind == "amplitude":
        return p >= 0.5 or lam >= 0.5
    if kind == "dephasing":
        return lam >= 0.5
    raise ValueError(f"unknown kind {kind!r}")
