import json
import math

import numpy as np
import pytest
from scipy.integrate import quad
from scipy.stats import beta as beta_law
from scipy.stats import chisquare

from qchaos.core import sample
from qchaos.fourier import wht
from qchaos.noise import ansatz_dist
from qchaos.stats import (
    EULER_GAMMA,
    BipartitionReport,
    PTReference,
    bipartition_sum,
    bipartition_sum_test,
    check_report,
    collision_beta,
    entropy,
    fourier_gaussian_test,
    sample_haar_probdist,
    xeb,
)


def test_pt_reference_values():
    ref = PTReference.for_qubits(14)
    assert ref.entropy_ref == pytest.approx(14 * math.log(2) + EULER_GAMMA - 1)
    assert ref.entropy_ref < 14 * math.log(2)
    assert ref.l1_to_uniform_ref == pytest.approx(2 / math.e)
    assert ref.second_moment_ref == pytest.approx(2 / 16384)
    assert ref.fourier_std_ref == pytest.approx(16384.0**-1.5)
    assert EULER_GAMMA == pytest.approx(0.5772156649, abs=1e-10)
    with pytest.raises(ValueError):
        PTReference.for_qubits(0)


def test_haar_dist_is_valid_and_exponential_tailed():
    n = 14
    N = 1 << n
    p = sample_haar_probdist(n, seed=0)
    assert abs(p.sum() - 1) < 1e-12
    assert p.min() >= 0
    assert np.mean(N * p) == pytest.approx(1.0, abs=1e-12)
    for t in (1.0, 2.0, 3.0):
        q = math.exp(-t)
        frac = np.mean(N * p > t)
        assert abs(frac - q) < 3 * math.sqrt(q * (1 - q) / N)


def test_haar_l1_distance_to_uniform():
    n = 14
    N = 1 << n
    p = sample_haar_probdist(n, seed=1)
    l1 = np.abs(p - 1 / N).sum()
    assert abs(l1 - 2 / math.e) < 0.02 * (2 / math.e)


def test_entropy_examples():
    assert entropy(np.full(1024, 1 / 1024)) == pytest.approx(10 * math.log(2))
    point = np.zeros(64)
    point[17] = 1.0
    assert entropy(point) == 0.0
    ref = PTReference.for_qubits(16)
    assert ref.entropy_ref == pytest.approx(10.6675, abs=5e-4)
    h = entropy(sample_haar_probdist(16, seed=2))
    assert abs(h - ref.entropy_ref) < 0.02


def test_xeb_ideal_uniform_and_ansatz():
    # Sharp check: the estimator's expectation for a FIXED state is the
    # exact mixture-weighted mean of ln(1/p), so that comparison needs
    # only sampling noise (3 std_err).  The nominal alpha carries an
    # extra state-to-state offset of order 2^{-n/2}, hence the floor.
    n = 12
    N = 1 << n
    p = sample_haar_probdist(n, seed=3)
    log_inv = -np.log(p)
    k = 20000
    res_ideal = xeb(sample(p, k, seed=4), p)
    assert abs(res_ideal.cross_entropy - entropy(p)) < 3 * res_ideal.std_err
    assert abs(res_ideal.alpha_hat - 1.0) < max(0.05, 3 * res_ideal.std_err)
    res_unif = xeb(sample(np.full(N, 1 / N), k, seed=5), p)
    assert abs(res_unif.cross_entropy - log_inv.mean()) < 3 * res_unif.std_err
    assert abs(res_unif.alpha_hat) < max(0.05, 3 * res_unif.std_err)
    res_half = xeb(sample(ansatz_dist(p, 0.5), k, seed=6), p)
    exact_half = float(ansatz_dist(p, 0.5) @ log_inv)
    assert abs(res_half.cross_entropy - exact_half) < 3 * res_half.std_err
    assert abs(res_half.alpha_hat - 0.5) < max(0.05, 3 * res_half.std_err)
    assert res_ideal.cross_entropy == pytest.approx(
        n * math.log(2) + EULER_GAMMA - res_ideal.alpha_hat
    )
    doc = json.loads(res_ideal.to_json())
    assert doc["k"] == k and doc["n"] == n


def test_xeb_linearity_in_alpha():
    n = 12
    p = sample_haar_probdist(n, seed=7)
    log_inv = -np.log(p)
    k = 20000
    for i, alpha in enumerate((0.0, 0.25, 0.5, 1.0)):
        mixed = ansatz_dist(p, alpha)
        res = xeb(sample(mixed, k, seed=10 + i), p)
        assert abs(res.cross_entropy - float(mixed @ log_inv)) < 3 * res.std_err
        assert abs(res.alpha_hat - alpha) < max(0.05, 3 * res.std_err)
        assert res.std_err > 0


def test_xeb_input_validation():
    p = np.array([0.5, 0.5, 0.0, 0.0])
    with pytest.raises(ValueError, match="zero ideal probability"):
        xeb(np.array([0, 2, 2]), p)
    with pytest.raises(ValueError):
        xeb(np.array([], dtype=int), p)
    with pytest.raises(ValueError):
        xeb(np.array([4]), p)
    res = xeb(np.array([0]), p)
    assert res.std_err == math.inf


def test_check_report_modes():
    r = check_report("x", 1.02, 1.0, 0.05)
    assert r["pass"] and r["tolerance"] == 0.05
    assert not check_report("x", 1.1, 1.0, 0.05)["pass"]
    assert check_report("p", 0.3, 0.01)["pass"]
    assert not check_report("p", 0.005, 0.01)["pass"]


def test_fourier_gaussian_on_haar_states():
    n = 12
    spectra = [wht(sample_haar_probdist(n, seed=100 + i)) for i in range(50)]
    rep = fourier_gaussian_test(spectra)
    ref = PTReference.for_qubits(n).fourier_std_ref
    assert rep.pool_size == 50 * 4095
    assert not rep.degenerate
    assert abs(rep.mean) < 3 * ref / math.sqrt(rep.pool_size)
    assert abs(rep.std - ref) < 0.05 * ref
    assert rep.ks_pvalue > 0.01
    doc = json.loads(rep.to_json())
    assert all(c["pass"] for c in doc["checks"])


def test_fourier_gaussian_degenerate_and_small_pool():
    n = 12
    uniform_spec = np.zeros(1 << n)
    uniform_spec[0] = 2.0**-n
    rep = fourier_gaussian_test([uniform_spec] * 10)
    assert rep.degenerate and rep.std == 0.0
    with pytest.raises(ValueError, match="pooled component count"):
        fourier_gaussian_test([wht(sample_haar_probdist(n, seed=0))] * 2)
    with pytest.raises(ValueError):
        fourier_gaussian_test([])


def test_fourier_gaussian_ansatz_scaling():
    n = 12
    spectra = [
        wht(ansatz_dist(sample_haar_probdist(n, seed=200 + i), 0.5)) for i in range(50)
    ]
    rep = fourier_gaussian_test(spectra)
    ref = PTReference.for_qubits(n).fourier_std_ref
    assert abs(rep.std - 0.5 * ref) < 0.1 * 0.5 * ref


def test_bipartition_sum_matches_spectrum():
    n = 8
    p = sample_haar_probdist(n, seed=8)
    coeffs = wht(p)
    for s in (1, 37, 255):
        bs = bipartition_sum(p, s)
        assert bs.S.size == 1 << (n - 1)
        assert 0.0 <= bs.u <= 1.0
        assert coeffs[s] == pytest.approx((1 - 2 * bs.u) / (1 << n), abs=1e-12)
    with pytest.raises(ValueError):
        bipartition_sum(p, 0)


def test_bipartition_law_moments_and_ks():
    n = 8
    rep = bipartition_sum_test(n, trials=10000, seed=9)
    var_ref = 1 / (4 * 257)
    assert rep.variance_ref == pytest.approx(var_ref)
    assert abs(rep.mean - 0.5) < 3 * math.sqrt(var_ref / rep.trials)
    assert abs(rep.variance - var_ref) < 0.1 * var_ref
    assert rep.ks_pvalue > 0.01
    doc = json.loads(rep.to_json())
    assert all(c["pass"] for c in doc["checks"])
    with pytest.raises(ValueError):
        bipartition_sum_test(3, trials=10, seed=0)


def test_bipartition_density_chi2_against_formula():
    # compare the n=4 histogram to the explicit factorial-form density
    n = 4
    N = 1 << n
    rep = bipartition_sum_test(n, trials=4800, seed=10)
    norm = math.factorial(N - 1) / math.factorial(N // 2 - 1) ** 2

    def density(u):
        return norm * (1 - u) ** (N // 2 - 1) * u ** (N // 2 - 1)

    nbins = 16
    edges = beta_law(N // 2, N // 2).ppf(np.linspace(0, 1, nbins + 1))
    edges[0], edges[-1] = 0.0, 1.0
    observed, _ = np.histogram(rep.us, bins=edges)
    expected = np.array(
        [quad(density, lo, hi)[0] for lo, hi in zip(edges[:-1], edges[1:])]
    )
    expected *= rep.trials / expected.sum()
    assert chisquare(observed, expected).pvalue > 0.01


def test_collision_beta():
    assert collision_beta(np.full(32, 1 / 32)) == pytest.approx(1.0)
    point = np.zeros(32)
    point[3] = 1.0
    assert collision_beta(point) == pytest.approx(32.0)
    b = collision_beta(sample_haar_probdist(14, seed=11))
    assert abs(b - 2.0) < 0.05 * 2.0


def test_isinstance_report_types():
    rep = bipartition_sum_test(4, trials=64, seed=12)
    assert isinstance(rep, BipartitionReport)
    assert rep.us.size == 64
