import numpy as np
import pytest

from qglue._kernels import plane_bias
from qglue.channels import batch_bias, make_pair
from qglue.coherent_info import (
    DEFAULT_CONFIG,
    OPT_TOL,
    OptimizerConfig,
    boundary_scan_lambda0,
    glued_pair,
    golden_section,
    optimize_axis,
    params_to_rho,
    q1_amplitude_glued,
    q1_dephrasure,
    q1_generic,
    with_seed,
)
from qglue.erasure import ErasureParams, erasure_pair, perfect_iso
from qglue.qubit_models import lambda0
from qglue.verify import coherent_info_suite, random_density

FAST = OptimizerConfig(multistart_count=8, polish_count=2)

# 40-digit grid-plus-golden-section evaluation of the closed-form axis bias
AMPLITUDE_REF = [
    # p, lam, q1_B, argmax z, q1_C, argmin z
    (0.3, 0.1, 0.19658314905904238, 0.1667520533, 7.064849462880781e-5, -0.9990167044),
    (0.1, 0.2, 0.36869775792928883, 0.1089218161, 4.4094276879382641e-5, -0.9996935512),
    (0.25, 0.25, 0.068555938041088995, 0.3523811483, 0.015650496999316441, -0.8958993291),
]
DEPHRASURE_REF = [
    # p, lam, q1_B, q1_C, argmin x
    (0.25, 0.1, 0.069849687986780422, 0.0010719831089584921, -0.9844821797),
    (0.1, 0.3, 0.071703084487503145, 0.0083665806049434099, -0.9539109738),
]


def test_config_validation():
    with pytest.raises(ValueError):
        OptimizerConfig(coarse_grid_points=2)
    with pytest.raises(ValueError):
        OptimizerConfig(refine_tol=0)
    with pytest.raises(ValueError):
        OptimizerConfig(tail_min_exp=-1, tail_max_exp=-2)
    assert with_seed(DEFAULT_CONFIG, 7).seed == 7


def test_golden_section_quadratic():
    x, fx, n = golden_section(lambda t: -(t - 0.3) ** 2, 0.0, 1.0, 1e-12)
    assert x == pytest.approx(0.3, abs=1e-9)
    assert fx == pytest.approx(0.0, abs=1e-15)
    assert n > 10


def test_optimize_axis_finds_pole_maximum():
    # f peaks at distance 1e-150 from t = 1; only the log-spaced tail can see it
    def f(lo, hi):
        return -np.abs(np.log10(np.maximum(hi, 1e-320)) + 150.0)

    opt = optimize_axis(f, True, DEFAULT_CONFIG)
    assert np.log10(opt.e_hi) == pytest.approx(-150, abs=0.6)


@pytest.mark.parametrize("p,lam,qb,zb,qc,zc", AMPLITUDE_REF)
def test_amplitude_against_reference(p, lam, qb, zb, qc, zc):
    r = q1_amplitude_glued(p, lam)
    assert r.q1_B == pytest.approx(qb, abs=1e-12)
    assert r.q1_C == pytest.approx(qc, abs=1e-12)
    assert r.argmax_param == pytest.approx(zb, abs=1e-6)
    assert r.argmin_param == pytest.approx(zc, abs=1e-6)
    assert r.method == "axis_scan_1d"


@pytest.mark.parametrize("p,lam,qb,qc,xc", DEPHRASURE_REF)
def test_dephrasure_against_reference(p, lam, qb, qc, xc):
    r = q1_dephrasure(p, lam)
    assert r.q1_B == pytest.approx(qb, abs=1e-12)
    assert r.q1_C == pytest.approx(qc, abs=1e-12)
    assert r.argmax_param == pytest.approx(0.0, abs=1e-6)
    assert r.argmin_param == pytest.approx(xc, abs=1e-6)


def test_amplitude_erasure_limit():
    r = q1_amplitude_glued(0.0, 0.3)
    assert r.q1_B == pytest.approx(0.4, abs=1e-12)
    assert r.q1_C == 0.0


def test_amplitude_without_erasure_is_positive():
    assert q1_amplitude_glued(0.3, 0.0).q1_B > 0.01


def test_dephrasure_range():
    with pytest.raises(ValueError):
        q1_dephrasure(0.7, 0.1)
    with pytest.raises(ValueError):
        q1_amplitude_glued(0.3, 1.5)


@pytest.mark.parametrize("kind,fn,p,lam", [
    ("amplitude", q1_amplitude_glued, 0.3, 0.1),
    ("amplitude", q1_amplitude_glued, 0.15, 0.4),
    ("dephasing", q1_dephrasure, 0.2, 0.12),
])
def test_no_random_state_beats_reported_extrema(kind, fn, p, lam):
    r = fn(p, lam)
    rng = np.random.default_rng(11)
    rhos = np.stack([random_density(rng, 2) for _ in range(1000)])
    vals = batch_bias(glued_pair(kind, p, lam), rhos)
    assert vals.max() <= r.q1_B + OPT_TOL
    assert -vals.min() <= r.q1_C + OPT_TOL


@pytest.mark.parametrize("p,lam", [(0.05, 0.1), (0.3, 0.2), (0.6, 0.3), (0.9, 0.05)])
def test_amplitude_monotone_in_z_on_circles(p, lam):
    th = np.linspace(0, np.pi, 721)
    for r in np.linspace(0.05, 1.0, 20):
        z = r * np.cos(th)
        x = np.sqrt(np.maximum(r * r - z * z, 0.0))
        d = np.diff(plane_bias("amplitude", p, lam, x, z))
        assert d.max() <= 1e-13 or d.min() >= -1e-13


def test_params_to_rho_is_state():
    rng = np.random.default_rng(0)
    for d in (2, 3, 4):
        rho = params_to_rho(rng.standard_normal(d * d), d)
        assert np.trace(rho).real == pytest.approx(1.0)
        assert np.linalg.eigvalsh(rho).min() > -1e-14
    np.testing.assert_allclose(params_to_rho(np.zeros(4), 2), np.eye(2) / 2)


def test_generic_identity_pair():
    r = q1_generic(make_pair(perfect_iso(2)), FAST)
    assert r.q1_B == pytest.approx(1.0, abs=1e-9)
    np.testing.assert_allclose(r.argmax_state, np.eye(2) / 2, atol=1e-4)


def test_generic_erasure():
    r = q1_generic(erasure_pair(ErasureParams(0.3, 2)), FAST)
    assert r.q1_B == pytest.approx(0.4, abs=1e-6)
    assert r.q1_C == pytest.approx(0.0, abs=1e-6)


def test_generic_agrees_with_axis_scan():
    r = q1_generic(glued_pair("amplitude", 0.3, 0.1))
    s = q1_amplitude_glued(0.3, 0.1)
    assert r.q1_B == pytest.approx(s.q1_B, abs=1e-10)
    assert r.q1_C == pytest.approx(s.q1_C, abs=1e-10)


def test_generic_is_seed_deterministic():
    pair = glued_pair("dephasing", 0.2, 0.1)
    a, b = q1_generic(pair, with_seed(FAST, 3)), q1_generic(pair, with_seed(FAST, 3))
    assert a.q1_B == b.q1_B and a.evaluations == b.evaluations


def test_boundary_scan_erasure_limit():
    assert boundary_scan_lambda0(0.0) == pytest.approx(0.5, abs=1e-4)


@pytest.mark.parametrize("p", [0.25, 0.4])
def test_boundary_scan_assisted(p):
    assert boundary_scan_lambda0(p, assisted=True) == pytest.approx(lambda0(p), abs=1e-3)


def test_boundary_scan_plain_detector_within_tolerance():
    b = boundary_scan_lambda0(0.25)
    # the plain detector stops where Q1 drops below the threshold, just short of lambda0
    assert 0 < lambda0(0.25) - b < 0.01


def test_coherent_info_suite_passes():
    for c in coherent_info_suite():
        assert c.passed, c
