import math

import numpy as np
import pytest

from steinchar import stein
from steinchar.sampling import (
    McmcDiagnostics,
    coe_sample,
    cse_sample,
    exchangeable_pair,
    haar_orthogonal,
    haar_symplectic,
    haar_unitary,
    mcmc_w_values,
    quaternion_dual,
    sample_pairs,
    sample_w,
    sphere_sample,
    symplectic_form,
    weyl_mcmc,
)
from steinchar.stats import dkw_epsilon, linearity_check

ALL = ("usp", "so-odd", "o-even", "u", "sphere", "coe", "cse")


def _zscore(samples, target):
    se = samples.std() / math.sqrt(len(samples))
    return (samples.mean() - target) / se


# -- structure ---------------------------------------------------------------


def test_unitary_structure():
    rng = np.random.default_rng(0)
    g = haar_unitary(6, rng, 64)
    assert np.abs(g @ np.conj(np.swapaxes(g, -1, -2)) - np.eye(6)).max() < 1e-10


def test_orthogonal_structure_and_components():
    rng = np.random.default_rng(1)
    g = haar_orthogonal(5, rng, size=2000)
    assert np.abs(g @ np.swapaxes(g, -1, -2) - np.eye(5)).max() < 1e-10
    with pytest.raises(ValueError):
        haar_orthogonal(5, rng, "sideways")


def test_orthogonal_full_component_frequencies():
    rng = np.random.default_rng(2)
    g = haar_orthogonal(4, rng, "full", 20000)
    dets = np.linalg.det(g)
    assert np.abs(np.abs(dets) - 1).max() < 1e-8
    frac = (dets > 0).mean()
    assert abs(frac - 0.5) < 3 * math.sqrt(0.25 / 20000)


def test_orthogonal_special_has_unit_determinant():
    rng = np.random.default_rng(3)
    g = haar_orthogonal(6, rng, "special", 500)
    assert np.abs(np.linalg.det(g) - 1).max() < 1e-8


def test_symplectic_structure():
    rng = np.random.default_rng(4)
    for n in (1, 2, 4):
        g = haar_symplectic(n, rng, 40)
        j = symplectic_form(n)
        assert np.abs(g @ j @ np.swapaxes(g, -1, -2) - j).max() < 1e-10
        assert np.abs(g @ np.conj(np.swapaxes(g, -1, -2)) - np.eye(2 * n)).max() < 1e-10
        tr = np.trace(g, axis1=-2, axis2=-1)
        assert np.abs(tr.imag).max() < 1e-10
        # eigenvalues come in conjugate pairs
        ev = np.linalg.eigvals(g[0])
        for v in ev:
            assert np.abs(ev - np.conj(v)).min() < 1e-8


# -- invariance / moment statistics ------------------------------------------


def test_unitary_trace_moments():
    rng = np.random.default_rng(5)
    g = haar_unitary(4, rng, 100_000)
    tr = np.trace(g, axis1=-2, axis2=-1)
    assert abs(_zscore(tr.real, 0.0)) < 3
    assert abs(_zscore(np.abs(tr) ** 2, 1.0)) < 3


def test_unitary_left_invariance():
    rng = np.random.default_rng(6)
    g = haar_unitary(4, rng, 40_000)
    f = haar_unitary(4, np.random.default_rng(99))
    tr = np.einsum("ij,bji->b", f, g)
    assert abs(_zscore(tr.real, 0.0)) < 3
    assert abs(_zscore(np.abs(tr) ** 2, 1.0)) < 3


def test_unitary_n1_is_uniform_circle():
    rng = np.random.default_rng(7)
    g = haar_unitary(1, rng, 20_000)
    u = (np.angle(g[:, 0, 0]) / (2 * math.pi)) % 1.0
    ecdf = np.sort(u)
    d = np.abs(ecdf - (np.arange(1, len(u) + 1) - 0.5) / len(u)).max() + 0.5 / len(u)
    assert d < dkw_epsilon(len(u), 0.01)


def test_so3_trace_mean_is_zero():
    rng = np.random.default_rng(8)
    g = haar_orthogonal(3, rng, "special", 100_000)
    tr = np.trace(g, axis1=-2, axis2=-1)
    assert abs(_zscore(tr, 0.0)) < 3


def test_o_even_trace_square():
    rng = np.random.default_rng(9)
    g = haar_orthogonal(6, rng, "full", 100_000)
    tr = np.trace(g, axis1=-2, axis2=-1)
    assert abs(_zscore(tr**2, 1.0)) < 3


def test_symplectic_trace_moments():
    rng = np.random.default_rng(10)
    g = haar_symplectic(3, rng, 100_000)
    tr = np.trace(g, axis1=-2, axis2=-1).real
    assert abs(_zscore(tr, 0.0)) < 3
    assert abs(_zscore(tr**2, 1.0)) < 3


def test_circular_w_moments():
    rng = np.random.default_rng(11)
    for sampler in (coe_sample, cse_sample):
        w = sampler(5, rng, 100_000)
        assert abs(_zscore(w, 0.0)) < 3
        assert abs(_zscore(w**2, 1.0)) < 3


def test_cse_is_self_dual():
    rng = np.random.default_rng(12)
    n = 3
    u = haar_unitary(2 * n, rng)
    g = quaternion_dual(u[None], n)[0] @ u
    assert np.abs(quaternion_dual(g[None], n)[0] - g).max() < 1e-10
    ev = np.linalg.eigvals(g)
    # doubly degenerate spectrum: sorted eigenvalues pair up
    ev = ev[np.argsort(np.angle(ev))]
    assert np.abs(ev[0::2] - ev[1::2]).max() < 1e-6


def test_sphere_sample_statistics():
    rng = np.random.default_rng(13)
    x = sphere_sample(5, rng, 100_000)
    assert abs(_zscore(x, 0.0)) < 3
    assert abs(_zscore(x**2, 1.0 / 5.0)) < 3
    # n = 3: the last coordinate is uniform on [-1, 1]
    x3 = sphere_sample(3, rng, 50_000)
    u = (np.sort(x3) + 1) / 2
    d = np.abs(u - (np.arange(1, len(u) + 1) - 0.5) / len(u)).max() + 0.5 / len(u)
    assert d < dkw_epsilon(len(u), 0.01)


@pytest.mark.parametrize("family", ALL)
def test_w_mean_zero_variance_one(family):
    n = 4 if family != "sphere" else 10
    w = sample_w(family, n, 60_000, seed=14).values
    assert abs(_zscore(w, 0.0)) < 3
    v = (w - w.mean()) ** 2
    assert abs(_zscore(v, 1.0)) < 3.5


def test_sample_w_deterministic_and_worker_independent():
    a = sample_w("u", 3, 45_000, seed=15).values
    b = sample_w("u", 3, 45_000, seed=15).values
    c = sample_w("u", 3, 45_000, seed=15, workers=4).values
    assert np.array_equal(a, b)
    assert np.array_equal(a, c)


def test_unknown_family_rejected():
    with pytest.raises(ValueError):
        sample_w("so-even", 3, 10, seed=0)


# -- exchangeable pairs -------------------------------------------------------


@pytest.mark.parametrize("family", ALL)
def test_pair_moments_match_formulas(family):
    n, theta = 3, math.pi / 2
    value = theta if family != "sphere" else math.cos(theta)
    table = stein.builtin_table(family, n)
    mom = stein.moments(table, value)
    pb = sample_pairs(family, n, value, 40_000, seed=16)
    d = pb.w_prime - pb.w
    assert abs(_zscore(d**2, mom.e2)) < 3.5
    assert abs(_zscore(d**4, mom.e4)) < 3.5
    slope, se = linearity_check(pb.w, pb.w_prime)
    assert abs(slope - (1 - mom.a)) < 3.5 * se


@pytest.mark.parametrize("family", ALL)
def test_pair_swap_symmetry(family):
    n = 3
    value = 1.0 if family != "sphere" else 0.5
    pb = sample_pairs(family, n, value, 30_000, seed=17)
    for k in (1, 2, 3):
        diff = pb.w**k - pb.w_prime**k
        se = diff.std() / math.sqrt(len(diff))
        assert abs(diff.mean()) < 4 * se


def test_pair_theta_zero_rejected():
    with pytest.raises(ValueError):
        exchangeable_pair("usp", 3, 0.0, np.random.default_rng(0))


def test_pairs_deterministic():
    a = sample_pairs("coe", 4, 0.9, 25_000, seed=18)
    b = sample_pairs("coe", 4, 0.9, 25_000, seed=18)
    assert np.array_equal(a.w, b.w) and np.array_equal(a.w_prime, b.w_prime)
    assert a.pairs[0] == (a.w[0], a.w_prime[0])


# -- eigenvalue-angle MCMC ----------------------------------------------------


def test_mcmc_flat_is_uniform():
    ang, diag = weyl_mcmc("flat", 3, 3000, np.random.default_rng(19), burn_in=100, thin=2)
    assert isinstance(diag, McmcDiagnostics)
    assert diag.acceptance_rate == pytest.approx(1.0)
    u = np.sort(ang.ravel()) / (2 * math.pi)
    d = np.abs(u - (np.arange(1, len(u) + 1) - 0.5) / len(u)).max() + 0.5 / len(u)
    assert d < dkw_epsilon(len(u), 0.01)


def test_mcmc_coe_pair_distance_matches_quadrature():
    m = 800
    ang = 2 * math.pi * np.arange(m) / m
    x = np.exp(1j * ang)
    w = np.abs(x[:, None] - x[None, :])
    expected = (w * w).sum() / w.sum()
    samples, diag = weyl_mcmc(
        "coe", 2, 20_000, np.random.default_rng(20), burn_in=500, thin=5
    )
    d = np.abs(np.exp(1j * samples[:, 0]) - np.exp(1j * samples[:, 1]))
    se = d.std() / math.sqrt(len(d) / max(diag.autocorrelation_time, 1.0))
    assert abs(d.mean() - expected) < 4 * se


def test_mcmc_usp_matches_direct_sampler():
    samples, diag = weyl_mcmc(
        "usp", 2, 20_000, np.random.default_rng(21), burn_in=500, thin=5
    )
    w_m = mcmc_w_values("usp", 2, samples)
    w_d = sample_w("usp", 2, 40_000, seed=22).values
    for k in (1, 2, 4):
        se = math.sqrt(
            np.var(w_m**k) * max(diag.autocorrelation_time, 1.0) / len(w_m)
            + np.var(w_d**k) / len(w_d)
        )
        assert abs((w_m**k).mean() - (w_d**k).mean()) < 4 * se


def test_mcmc_cse_matches_matrix_construction():
    samples, diag = weyl_mcmc(
        "cse", 3, 20_000, np.random.default_rng(23), burn_in=800, thin=5
    )
    w_m = mcmc_w_values("cse", 3, samples)
    w_d = sample_w("cse", 3, 40_000, seed=24).values
    for k in (2, 4):
        se = math.sqrt(
            np.var(w_m**k) * max(diag.autocorrelation_time, 1.0) / len(w_m)
            + np.var(w_d**k) / len(w_d)
        )
        assert abs((w_m**k).mean() - (w_d**k).mean()) < 4 * se


def test_mcmc_rejects_unknown_density():
    with pytest.raises(ValueError):
        weyl_mcmc("o-even", 3, 100, np.random.default_rng(0))
