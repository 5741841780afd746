import numpy as np
import pytest

from chansim.cbsm import (ExponentialSpec, draw_shadowing, exponential_correlation,
                          exponential_with_shadowing, uncorrelated_with_shadowing)
from chansim.errors import InvalidParam
from chansim.linalg import psd_eigvals, log2_det_ipm


def test_exponential_rho_zero_is_identity():
    r = exponential_correlation(ExponentialSpec(m=2, rho=0.0))
    assert np.array_equal(r, np.eye(2))


def test_exponential_rho_one_all_ones():
    r = exponential_correlation(ExponentialSpec(m=3, rho=1.0))
    assert np.array_equal(r, np.ones((3, 3)))
    assert np.allclose(psd_eigvals(r), [3, 0, 0], atol=1e-12)


def test_exponential_2x2_half():
    r = exponential_correlation(ExponentialSpec(m=2, rho=0.5))
    assert np.allclose(r, [[1, 0.5], [0.5, 1]])
    lam = psd_eigvals(r)
    assert np.allclose(lam, [1.5, 0.5])
    assert np.isclose(lam[0] / lam[1], 3.0)


def test_exponential_is_toeplitz():
    r = exponential_correlation(ExponentialSpec(m=20, rho=0.7))
    for k in range(20):
        diag = np.diag(r, k)
        assert np.all(diag == diag[0])
    assert np.array_equal(r, r.T)


def test_exponential_rejects_bad_rho():
    with pytest.raises(InvalidParam):
        ExponentialSpec(m=4, rho=1.5)
    with pytest.raises(InvalidParam):
        ExponentialSpec(m=4, rho=-0.1)


def test_capacity_ub_nonincreasing_in_rho():
    eta, m = 1e6, 50
    caps = [log2_det_ipm(exponential_correlation(ExponentialSpec(m=m, rho=r)), eta / m)
            for r in (0.0, 0.2, 0.4, 0.6, 0.8, 1.0)]
    assert np.all(np.diff(caps) <= 0)


def test_draw_shadowing_zero_sigma():
    rng = np.random.default_rng(0)
    assert np.all(draw_shadowing(10, 0.0, rng) == 0)


def test_draw_shadowing_moments():
    rng = np.random.default_rng(1)
    f = draw_shadowing(1_000_000, 10.0, rng)
    assert abs(f.std() - 10.0) < 0.1


def test_shadowing_amplitude_mean():
    # lognormal mean exp((sigma ln10 / 10)^2 / 2) as the oracle
    rng = np.random.default_rng(10)
    f = draw_shadowing(1_000_000, 10.0, rng)
    amp = 10.0 ** (f / 10.0)
    oracle = np.exp((10.0 * np.log(10) / 10.0) ** 2 / 2.0)
    assert abs(amp.mean() - 14.2) < 0.5
    assert abs(amp.mean() - oracle) < 0.5


def test_uncorrelated_zero_shadowing():
    r = uncorrelated_with_shadowing(3, 2.0, np.zeros(3))
    assert np.array_equal(r, 2.0 * np.eye(3))


def test_uncorrelated_direct_values():
    r = uncorrelated_with_shadowing(2, 1.0, np.array([10.0, -10.0]))
    assert np.allclose(r, np.diag([10.0, 0.1]))


def test_uncorrelated_mean_diag_entry():
    rng = np.random.default_rng(3)
    beta = 2.0
    acc = 0.0
    n = 2000
    for _ in range(n):
        f = draw_shadowing(16, 10.0, rng)
        acc += np.diag(uncorrelated_with_shadowing(16, beta, f)).mean()
    assert abs(acc / n - 14.2 * beta) < 1.0 * beta


def test_exponential_with_shadowing_reduction():
    spec = ExponentialSpec(m=12, rho=0.6, theta=0.0, beta=1.0)
    r = exponential_with_shadowing(spec, np.zeros(12))
    assert np.abs(r - exponential_correlation(spec)).max() <= 1e-15


def test_exponential_with_shadowing_diagonal():
    rng = np.random.default_rng(4)
    f = draw_shadowing(8, 4.0, rng)
    spec = ExponentialSpec(m=8, rho=0.5, theta=np.pi / 2, beta=1.5, sigma_shad=4.0)
    r = exponential_with_shadowing(spec, f)
    assert np.allclose(np.diag(r).real, 1.5 * 10.0 ** (f / 10.0))


def test_exponential_with_shadowing_hermitian():
    rng = np.random.default_rng(5)
    f = draw_shadowing(10, 4.0, rng)
    spec = ExponentialSpec(m=10, rho=0.8, theta=1.1, sigma_shad=4.0)
    r = exponential_with_shadowing(spec, f)
    assert np.abs(r - r.conj().T).max() <= 1e-12 * np.abs(r).max()
    psd_eigvals(r)  # no NotPSD


def test_shadowed_capacity_increases_with_m_near_full_correlation():
    # At rho = 1 exactly the shadowed matrix is rank-1 (phase and shadow
    # factors separate), so capacity is flat in M; just below 1 the
    # increase with M is restored, and at rho = 1 shadowing still beats
    # the plain fully-correlated model.
    rng = np.random.default_rng(6)
    eta = 1e6
    caps = []
    for m in (20, 60, 100):
        acc = 0.0
        for _ in range(50):
            f = draw_shadowing(m, 4.0, rng)
            spec = ExponentialSpec(m=m, rho=0.98, theta=np.pi / 2, sigma_shad=4.0)
            acc += log2_det_ipm(exponential_with_shadowing(spec, f), eta / m)
        caps.append(acc / 50)
    assert caps[0] < caps[1] < caps[2]

    plain = log2_det_ipm(exponential_correlation(ExponentialSpec(m=100, rho=1.0)),
                         eta / 100)
    acc = 0.0
    for _ in range(50):
        f = draw_shadowing(100, 4.0, rng)
        spec = ExponentialSpec(m=100, rho=1.0, theta=np.pi / 2, sigma_shad=4.0)
        acc += log2_det_ipm(exponential_with_shadowing(spec, f), eta / 100)
    assert acc / 50 > plain


def test_shadow_draw_length_checked():
    with pytest.raises(InvalidParam):
        uncorrelated_with_shadowing(4, 1.0, np.zeros(3))
    with pytest.raises(InvalidParam):
        exponential_with_shadowing(ExponentialSpec(m=4, rho=0.5), np.zeros(5))
