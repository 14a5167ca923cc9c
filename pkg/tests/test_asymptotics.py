import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import minimize_scalar

from qglue import asymptotics as asy
from qglue.coherent_info import q1_amplitude_glued, q1_dephrasure
from qglue.qubit_models import g_curve, lambda0
from qglue.verify import FIT_POINTS, asymptotics_suite

P_GRID = np.linspace(0.01, 0.49, 49)


def test_extremum_examples():
    eps, f = asy.extremum(asy.AsymptoticModel(1.0, 1.0))
    assert eps == pytest.approx(0.1353352832366127, abs=1e-15)
    assert f == pytest.approx(-0.1353352832366127, abs=1e-15)
    eps, f = asy.extremum(asy.AsymptoticModel(-1.0, -1.0))
    assert eps == pytest.approx(np.exp(-2))
    assert f == pytest.approx(np.exp(-2))
    with pytest.raises(ValueError):
        asy.extremum(asy.AsymptoticModel(1.0, -1.0))


def test_model_flags():
    assert asy.AsymptoticModel(1, 2).has_extremum
    assert not asy.AsymptoticModel(1, 2).is_maximum
    assert asy.AsymptoticModel(-1, -2).is_maximum
    assert not asy.AsymptoticModel(0, 1).has_extremum


@settings(max_examples=60, deadline=None)
@given(st.floats(0.05, 5), st.floats(0.01, 3), st.booleans())
def test_extremum_matches_brute_force(a, beta_over_alpha, flip):
    alpha = -a if flip else a
    beta = alpha * beta_over_alpha
    m = asy.AsymptoticModel(alpha, beta)
    eps, f = asy.extremum(m)
    s = 1.0 if m.is_maximum else -1.0
    res = minimize_scalar(lambda e: -s * m.f(e), bounds=(eps / 50, min(1.0, eps * 50)), method="bounded",
                          options={"xatol": 1e-14})
    assert -s * res.fun == pytest.approx(f, abs=1e-10)


def test_ad_alpha_zero_on_lambda0():
    for p in (0.1, 0.25, 0.4):
        assert asy.ad_alpha(p, lambda0(p)) == pytest.approx(0.0, abs=1e-15)
    assert asy.ad_alpha(0.25, 0.3) == pytest.approx(-(0.25 * 0.7 + 0.3 - 0.5) / -np.log(2))


def test_q1C_asymptote_examples():
    # (0.5/ln2) exp(0.01 + ln 0.01), evaluated at 40 digits
    assert asy.q1C_asymptote("ad", 0.01, 0.5) == pytest.approx(0.0072859718355069908, rel=1e-14)
    assert asy.q1C_asymptote("deph", 0.0, 0.3) == 0.0
    with pytest.raises(ValueError):
        asy.q1C_asymptote("xx", 0.1, 0.3)


@pytest.mark.parametrize("which", ["ad", "deph"])
def test_q1b_constants_positive(which):
    for p in P_GRID:
        a, b = asy.q1b_constants(which, p)
        assert a > 0 and b > 0


@pytest.mark.parametrize("which", ["ad", "deph"])
def test_q1B_asymptote_essential_singularity(which):
    dls = 10.0 ** -np.arange(2, 5)
    for k in range(1, 6):
        r = [asy.q1B_asymptote(which, 0.25, d) / d**k for d in dls]
        assert r[-1] < r[0] and r[-1] < 1e-20
    assert asy.q1B_asymptote(which, 0.25, 0.0) == 0.0
    assert asy.q1B_asymptote(which, 0.25, -0.01) == 0.0


# the dephrasure tail form only holds above j(p), i.e. for dl < g(p) - j(p) ~ 0.05 at p = 1/4
@pytest.mark.parametrize("which,fn,zero,dls", [
    ("ad", q1_amplitude_glued, lambda0, [0.1, 0.06, 0.03, 0.01, 0.005]),
    ("deph", q1_dephrasure, g_curve, [0.04, 0.03, 0.01, 0.005]),
])
def test_q1B_agreement_improves_toward_boundary(which, fn, zero, dls):
    logs = [abs(np.log(fn(0.25, zero(0.25) - d).q1_B / asy.q1B_asymptote(which, 0.25, d))) for d in dls]
    assert all(a >= b for a, b in zip(logs, logs[1:]))
    assert logs[-1] < np.log(2)


def test_delta2_asymptote_is_half_two_copy():
    assert asy.delta2_asymptote(0.25, 0.01) == pytest.approx(0.5 * asy.two_copy_asymptote(0.25, 0.01))
    assert asy.two_copy_asymptote(0.25, 0.0) == 0.0


def test_ratio_R_grows_without_bound():
    r = [asy.ratio_R(0.25, d) for d in (0.04, 0.02, 0.01, 0.005, 0.0025)]
    assert all(a < b for a, b in zip(r, r[1:]))
    assert r[-1] > 1e6


def test_two_copy_condition_on_grid():
    vals = np.array([asy.two_copy_condition(p) for p in P_GRID])
    assert (vals > 0).all() and (vals < 1).all()


def test_coefficient_set_validation():
    with pytest.raises(ValueError):
        asy.coefficient_set("ad_q2", 0.2, 0.1)
    with pytest.raises(ValueError):
        asy.coefficient_set("ad_q1B", 0.6, 0.1)
    cs = asy.coefficient_set("deph_q1C", 0.02, 0.3)
    assert cs.pole == -1
    assert cs.components["beta_2"] == pytest.approx(-2 * cs.components["beta_1"])


@pytest.mark.parametrize("which,p,lam", FIT_POINTS)
def test_epsilon_fit(which, p, lam):
    eps = np.array([1e-6, 1e-5, 1e-4])
    alpha, _ = asy.fit_template(asy.raw_bias(which, p, lam), eps)
    assert alpha == pytest.approx(asy.coefficient_set(which, p, lam).model.alpha, rel=0.01)


def test_q1C_extremum_reproduces_closed_form():
    for which in ("ad", "deph"):
        for lam in (0.2, 0.35, 0.5):
            m = asy.coefficient_set(f"{which}_q1C", 0.02, lam).model
            _, f = asy.extremum(m)
            assert -f == pytest.approx(asy.q1C_asymptote(which, 0.02, lam), rel=1e-12)


def test_fit_template_exact_on_template():
    m = asy.AsymptoticModel(-0.3, 0.7)
    alpha, beta = asy.fit_template(m.f, np.logspace(-8, -3, 6))
    assert alpha == pytest.approx(-0.3, abs=1e-12)
    assert beta == pytest.approx(0.7, abs=1e-10)


def test_asymptotics_suite_passes():
    for c in asymptotics_suite():
        assert c.passed, c
