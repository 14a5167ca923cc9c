import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qglue.numkernel import (
    DimSplit,
    batch_entropy,
    direct_sum_embed,
    hermitian_spectrum,
    kron,
    partial_trace,
    shannon_entropy,
    swap_factors,
    von_neumann_entropy,
)
from qglue.verify import numkernel_suite, random_density, random_unitary


def test_kron_identity():
    np.testing.assert_array_equal(kron(np.eye(2), np.eye(2)), np.eye(4))


def test_kron_entry_position():
    a = np.array([[1, 0], [0, 0]])
    b = np.array([[0, 0], [0, 1]])
    k = kron(a, b)
    # (A (x) B)[i*2+k, j*2+l] = A[i,j] B[k,l]: only A[0,0] B[1,1] survives
    expected = np.zeros((4, 4))
    expected[1, 1] = 1
    np.testing.assert_array_equal(k, expected)


def test_kron_shape():
    assert kron(np.ones((2, 2)), np.ones((3, 3))).shape == (6, 6)


def test_partial_trace_product_state():
    rng = np.random.default_rng(1)
    r1, r2 = random_density(rng, 2), random_density(rng, 3)
    m = np.kron(r1, r2)
    np.testing.assert_allclose(partial_trace(m, DimSplit(2, 3), "right"), r1, atol=1e-14)
    np.testing.assert_allclose(partial_trace(m, DimSplit(2, 3), "left"), r2, atol=1e-14)


def test_partial_trace_bell_state():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    out = partial_trace(np.outer(phi, phi), DimSplit(2, 2), "right")
    np.testing.assert_allclose(out, np.eye(2) / 2, atol=1e-15)


def test_partial_trace_rejects_bad_split():
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), DimSplit(2, 3), "left")
    with pytest.raises(ValueError):
        partial_trace(np.eye(4), DimSplit(2, 2), "middle")


def test_swap_factors_roundtrip():
    rng = np.random.default_rng(2)
    a, b = random_density(rng, 2), random_density(rng, 3)
    np.testing.assert_allclose(swap_factors(np.kron(a, b), DimSplit(2, 3)), np.kron(b, a), atol=1e-15)


def test_spectrum_examples():
    np.testing.assert_allclose(hermitian_spectrum(np.diag([0.3, 0.7])), [0.7, 0.3])
    sx = np.array([[0, 1], [1, 0]])
    np.testing.assert_allclose(hermitian_spectrum((np.eye(2) + sx) / 2), [1, 0], atol=1e-15)


def test_spectrum_rejects_non_hermitian():
    with pytest.raises(ValueError):
        hermitian_spectrum(np.array([[0, 1], [0, 0]]))


def test_entropy_examples():
    assert von_neumann_entropy(np.eye(2) / 2) == pytest.approx(1.0, abs=1e-15)
    psi = np.array([0.6, 0.8j])
    assert von_neumann_entropy(np.outer(psi, psi.conj())) == pytest.approx(0.0, abs=1e-14)
    # -0.9 log2 0.9 - 0.1 log2 0.1, evaluated at 40 digits
    assert von_neumann_entropy(np.diag([0.9, 0.1])) == pytest.approx(0.46899559358928122, abs=1e-15)


def test_entropy_validation():
    with pytest.raises(ValueError):
        von_neumann_entropy(np.diag([0.5, 0.6]))
    with pytest.raises(ValueError):
        von_neumann_entropy(np.diag([1.1, -0.1]))
    # roundoff-sized negativity is clamped
    assert von_neumann_entropy(np.diag([1.0 + 1e-13, -1e-13])) == pytest.approx(0.0, abs=1e-11)


def test_shannon_examples():
    assert shannon_entropy([0.5, 0.5]) == pytest.approx(1.0)
    assert shannon_entropy([1.0]) == 0.0
    assert shannon_entropy([0.25, 0.75]) == pytest.approx(0.81127812445913286, abs=1e-15)
    with pytest.raises(ValueError):
        shannon_entropy([0.5, 0.6])
    with pytest.raises(ValueError):
        shannon_entropy([1.5, -0.5])


def test_direct_sum_embed():
    np.testing.assert_array_equal(direct_sum_embed([np.eye(2), np.eye(3)]), np.eye(5))
    with pytest.raises(ValueError):
        direct_sum_embed([np.ones((2, 3))])


def test_block_entropy_decomposition():
    # S((+)_j w_j rho_j) = H(w) + sum_j w_j S(rho_j); value from a 40-digit evaluation
    w = (0.5, 0.3, 0.2)
    m = direct_sum_embed([w[0] * np.eye(2) / 2, w[1] * np.diag([0.9, 0.1]), w[2] * np.array([[1.0]])])
    assert von_neumann_entropy(m) == pytest.approx(2.1261739753041187, abs=1e-14)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10**6), st.integers(1, 5))
def test_entropy_bounds_and_unitary_invariance(seed, d):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, d)
    s = von_neumann_entropy(rho)
    assert -1e-12 <= s <= np.log2(d) + 1e-12
    u = random_unitary(rng, d)
    assert von_neumann_entropy(u @ rho @ u.conj().T) == pytest.approx(s, abs=1e-10)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_subadditivity(seed):
    rng = np.random.default_rng(seed)
    rho = random_density(rng, 6)
    sab = von_neumann_entropy(rho)
    sa = von_neumann_entropy(partial_trace(rho, DimSplit(2, 3), "right"))
    sb = von_neumann_entropy(partial_trace(rho, DimSplit(2, 3), "left"))
    assert sab <= sa + sb + 1e-10
    assert abs(sa - sb) <= sab + 1e-10


def test_batch_entropy_matches_scalar():
    rng = np.random.default_rng(3)
    mats = np.stack([random_density(rng, 3) for _ in range(10)])
    np.testing.assert_allclose(batch_entropy(mats), [von_neumann_entropy(m) for m in mats], atol=1e-13)


def test_numkernel_suite_passes():
    for c in numkernel_suite():
        assert c.passed, c
