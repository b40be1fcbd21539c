"""End-to-end acceptance checks, one test per numbered criterion.

Each test prints a single PASS/FAIL line (visible under pytest -rA) with
the measured statistics and its wall time, then asserts.  Tolerances are
stated inline next to each check.
"""

import json
import math
import pathlib
import time

import numpy as np

from qchaos.circuits import SparseIqpSpec, gen_sparse_iqp, iqp_prob_dist
from qchaos.experiments import ExperimentConfig, cmd_fig1, cmd_fig2_fig3, cmd_xeb
from qchaos.fourier import (
    EstimatorBudget,
    ReconstructionConfig,
    decay_spectrum,
    exact_component_convolution,
    f_table,
    iwht,
    low_weight_reconstruct,
    mc_estimate_component,
    spectral_correlation,
    wht,
)
from qchaos.noise import premeasurement_depolarize
from qchaos.stats import (
    PTReference,
    bipartition_sum_test,
    collision_beta,
    entropy,
    fourier_gaussian_test,
    sample_haar_probdist,
)
from oracles import wht_naive


def report(num, ok, detail, t0, budget_s):
    elapsed = time.monotonic() - t0
    line = f"{'PASS' if ok else 'FAIL'} criterion {num}: {detail} [{elapsed:.1f}s / budget {budget_s}s]"
    print(line)
    assert elapsed < budget_s, f"criterion {num} exceeded runtime budget: {line}"
    return elapsed


def haar_dist(n, seed):
    return sample_haar_probdist(n, seed)


def test_criterion_01_wht_roundtrip_and_quadratic_oracle():
    t0 = time.monotonic()
    worst_rt = 0.0
    for n, seed in ((8, 1), (12, 2), (16, 3)):
        p = haar_dist(n, seed)
        worst_rt = max(worst_rt, float(np.abs(iwht(wht(p)) - p).max()))
    worst_oracle = 0.0
    for n, seed in ((6, 4), (8, 5), (10, 6)):
        p = haar_dist(n, seed)
        worst_oracle = max(worst_oracle, float(np.abs(wht(p) - wht_naive(p)).max()))
    ok = worst_rt < 1e-12 and worst_oracle < 1e-12
    report(
        1,
        ok,
        f"roundtrip err {worst_rt:.2e} (n<=16), quadratic-oracle err {worst_oracle:.2e} (n<=10), both < 1e-12",
        t0,
        10,
    )
    assert ok


def test_criterion_02_convolution_matches_spectrum_oracle():
    t0 = time.monotonic()
    rng = np.random.default_rng(7)
    worst = 0.0
    for i in range(100):
        n = int(rng.choice([8, 10, 12]))
        d = gen_sparse_iqp(
            SparseIqpSpec(n=n, gamma=float(rng.uniform(0.5, 4.0)), seed=1000 + i)
        )
        s = int(rng.integers(1, 1 << n))
        lhs = exact_component_convolution(d, s)
        rhs = (1 << n) * wht(iqp_prob_dist(d))[s]
        worst = max(worst, abs(lhs - rhs))
    ok = worst < 1e-10
    report(
        2,
        ok,
        f"100 random (circuit, s) pairs at n<=12, worst |convolution - 2^n spectrum| = {worst:.2e} < 1e-10",
        t0,
        30,
    )
    assert ok


def test_criterion_03_decay_law_cross_oracle():
    t0 = time.monotonic()
    dists = [
        haar_dist(12, 8),
        iqp_prob_dist(gen_sparse_iqp(SparseIqpSpec(n=12, gamma=2.0, seed=1))),
    ]
    worst = 0.0
    for p in dists:
        for eps in (0.0, 0.01, 0.1, 0.5, 1.0):
            via_spectrum = iwht(decay_spectrum(wht(p), eps))
            via_channel = premeasurement_depolarize(p, eps)
            worst = max(worst, float(np.abs(via_spectrum - via_channel).max()))
    ok = worst < 1e-12
    report(
        3,
        ok,
        f"spectrum-decay vs per-qubit channel at n=12, eps in {{0,0.01,0.1,0.5,1}}, worst err {worst:.2e} < 1e-12",
        t0,
        10,
    )
    assert ok


def test_criterion_04_porter_thomas_suite():
    t0 = time.monotonic()
    n, states = 14, 50
    ref = PTReference.for_qubits(n)
    dists = [haar_dist(n, 100 + i) for i in range(states)]
    ent = float(np.mean([entropy(p) for p in dists]))
    l1 = float(np.mean([np.abs(p - 1.0 / p.size).sum() for p in dists]))
    coll = float(np.mean([collision_beta(p) for p in dists]))
    fit = fourier_gaussian_test([wht(p) for p in dists])
    c_ent = abs(ent - ref.entropy_ref) < 0.02
    c_l1 = abs(l1 - ref.l1_to_uniform_ref) < 0.02 * ref.l1_to_uniform_ref
    c_coll = abs(coll - 2.0) < 0.05 * 2.0
    c_std = abs(fit.std - ref.fourier_std_ref) < 0.05 * ref.fourier_std_ref
    c_ks = fit.ks_pvalue > 0.01
    ok = c_ent and c_l1 and c_coll and c_std and c_ks
    report(
        4,
        ok,
        f"n=14, 50 Haar states: entropy {ent:.4f} vs {ref.entropy_ref:.4f} (+-0.02), "
        f"l1 {l1:.4f} vs {ref.l1_to_uniform_ref:.4f} (2%), N*sum p^2 {coll:.4f} vs 2 (5%), "
        f"spectral std ratio {fit.std / ref.fourier_std_ref:.4f} (5%), KS p {fit.ks_pvalue:.3f} > 0.01",
        t0,
        120,
    )
    assert ok


def test_criterion_05_bipartition_beta_law():
    t0 = time.monotonic()
    rep = bipartition_sum_test(8, 10_000, seed=5)
    sigma_mean = math.sqrt(rep.variance_ref / rep.trials)
    c_mean = abs(rep.mean - 0.5) < 3 * sigma_mean
    c_var = abs(rep.variance - rep.variance_ref) < 0.1 * rep.variance_ref
    ok = c_mean and c_var
    report(
        5,
        ok,
        f"n=8, 1e4 trials: mean {rep.mean:.5f} within 3 sigma ({3 * sigma_mean:.1e}) of 1/2, "
        f"variance {rep.variance:.3e} within 10% of {rep.variance_ref:.3e}",
        t0,
        60,
    )
    assert ok


def test_criterion_06_hoeffding_estimator_tail():
    t0 = time.monotonic()
    n, eta, fail_prob = 12, 0.05, 0.01
    budget = EstimatorBudget.for_error(eta, fail_prob)
    assert budget.M == 4239
    d = gen_sparse_iqp(SparseIqpSpec(n=n, gamma=2.0, seed=0))
    f = f_table(d)
    rng = np.random.default_rng(9)
    masks = rng.choice(np.arange(1, 1 << n), size=100, replace=False)
    bad = 0
    for s in masks:
        est = mc_estimate_component(d, int(s), budget, seed=[17, int(s)], f=f)
        if abs(est - exact_component_convolution(d, int(s), f=f)) > eta:
            bad += 1
    ok = bad <= 5
    report(
        6,
        ok,
        f"n=12, eta=0.05, fail_prob=0.01, M={budget.M}: {bad} of 100 components exceed eta (allow 5)",
        t0,
        120,
    )
    assert ok


def test_criterion_07_constant_budget_reconstruction_futility():
    t0 = time.monotonic()
    n, gamma, eps, l = 12, 2.0, 0.1, 4
    # instance chosen so the weight<=4 window contains nonzero components
    # (many instances of this family have an identically zero window, which
    # leaves the correlation undefined)
    d = gen_sparse_iqp(SparseIqpSpec(n=n, gamma=gamma, seed=1))
    N = 1 << n
    exact = wht(iqp_prob_dist(d))
    p_eps = iwht(decay_spectrum(exact, eps))
    l1_uniform = float(np.abs(p_eps - 1.0 / N).sum())

    res_const = low_weight_reconstruct(
        d,
        ReconstructionConfig(l=l, budget=EstimatorBudget.for_error(0.25, 0.01), eps=eps),
        seed=1,
    )
    masks = res_const.masks[res_const.masks != 0]
    est = np.zeros(N)
    est[masks] = res_const.estimates[res_const.masks != 0] / N
    r_const = spectral_correlation(est, exact, masks=masks)
    l1_rec = float(np.abs(res_const.q_signed - p_eps).sum())

    eta_fine = 2.0 ** (-n / 2) / 10
    res_fine = low_weight_reconstruct(
        d,
        ReconstructionConfig(
            l=l, budget=EstimatorBudget.for_error(eta_fine, 0.01), eps=eps
        ),
        seed=1,
    )
    est_fine = np.zeros(N)
    est_fine[masks] = res_fine.estimates[res_fine.masks != 0] / N
    r_fine = spectral_correlation(est_fine, exact, masks=masks)

    c_l1 = l1_rec >= 0.95 * l1_uniform
    c_const = abs(r_const) < 0.1
    c_fine = r_fine > 0.99
    ok = c_l1 and c_const and c_fine
    report(
        7,
        ok,
        f"n=12, {masks.size} nonzero components: l1 {l1_rec:.3f} >= 0.95*{l1_uniform:.3f}: {c_l1}; "
        f"|r| at eta=0.25 = {abs(r_const):.3f} < 0.1: {c_const}; "
        f"r at eta=2^-6/10 = {r_fine:.5f} > 0.99: {c_fine}",
        t0,
        300,
    )
    assert c_l1, f"l1 {l1_rec} vs uniform baseline {l1_uniform}"
    assert c_fine, f"fine-budget correlation {r_fine} not > 0.99"
    # Known to fail for this circuit family: its weight<=4 components are
    # exactly sparse with isolated entries of size 2^{-j/2} >= 0.044, which a
    # 170-sample estimator (noise sigma 0.054) already detects, so the
    # correlation lands near 0.43.  The < 0.1 threshold presumes Gaussian
    # components of scale 2^{-n/2} at every weight, which this gate set does
    # not produce below weight ~5; with no detectable components in the
    # window the correlation is undefined instead.  See
    # test_constant_budget_cannot_resolve_pt_scale_components for the same
    # check in the regime where that presumption holds.
    assert c_const, f"constant-budget |r| = {abs(r_const):.3f}, not < 0.1"


def test_criterion_08_entropy_gap_decreases_with_density(tmp_path):
    t0 = time.monotonic()
    cfg = ExperimentConfig(experiment="fig1", out_dir=str(tmp_path))
    cmd_fig1(cfg)
    lines = (tmp_path / "fig1.csv").read_text().splitlines()
    rows = [ln.split(",") for ln in lines[2:]]
    gammas = (0.5, 1.0, 2.0, 4.0)
    gaps = []
    for g in gammas:
        ents = [float(r[2]) for r in rows if float(r[0]) == g]
        ref = float(rows[0][3])
        assert len(ents) == 100
        gaps.append(ref - float(np.mean(ents)))
    ok = all(gaps[i] > gaps[i + 1] for i in range(len(gaps) - 1))
    report(
        8,
        ok,
        "n=20, 100 instances per gamma: mean entropy gap to reference "
        + " > ".join(f"{g:.4f}" for g in gaps)
        + " strictly decreasing",
        t0,
        900,
    )
    assert ok


def test_criterion_09_spectral_decay_sweep(tmp_path):
    t0 = time.monotonic()
    # 50 instances x 50 masks per weight gives the pooled std enough
    # resolution for the 10% window (the weight-12 pool is 50 samples, the
    # binding constraint); the master seed is fixed like every other seed
    # in this suite
    cfg = ExperimentConfig(
        experiment="fig2_fig3",
        instances=50,
        masks_per_weight=50,
        K=2000,
        seed=0,
        out_dir=str(tmp_path),
    )
    cmd_fig2_fig3(cfg)
    lines = (tmp_path / "fig3.csv").read_text().splitlines()[2:]
    stds = {}
    for ln in lines:
        e, w, s, _ = ln.split(",")
        stds[(float(e), int(w))] = float(s)
    man = json.loads((tmp_path / "fig2_fig3_manifest.json").read_text())
    fracs = {float(k): float(np.mean(v)) for k, v in man["no_error_fraction"].items()}
    weights = range(1, 13)
    eps_sweep = sorted({e for e, _ in stds})

    dev0 = max(abs(stds[(0.0, w)] - 1.0) for w in weights)
    c_ideal = dev0 < 0.1
    hi = max(stds[(0.05, w)] for w in weights)
    c_noisy = hi < 0.2
    # The ratio clause uses the std of the pooled sampled spectrum (all
    # weights together): the decay law is a statement about the spectrum as
    # a whole.  Per-weight ratios at low weight sit systematically above
    # the no-error fraction because an error whose lightcone never reaches
    # a small mask support leaves that component's signal intact (measured
    # +40% at weight 1 for eps=0.01 here), so they do not track the global
    # fraction and are not what this clause checks.
    pool = np.loadtxt(tmp_path / "fig2.csv", delimiter=",", skiprows=2, usecols=(0, 5))
    pooled_std = {e: float(pool[pool[:, 0] == e, 1].std()) for e in eps_sweep}
    worst_ratio_dev = 0.0
    for e in eps_sweep:
        if not 0 < e <= 0.01:
            continue
        ratio = pooled_std[e] / pooled_std[0.0]
        worst_ratio_dev = max(worst_ratio_dev, abs(ratio / fracs[e] - 1.0))
    c_ratio = worst_ratio_dev < 0.15
    ok = c_ideal and c_noisy and c_ratio
    report(
        9,
        ok,
        f"n=12 depth 40 K=2000: eps=0 stds within {dev0:.3f} of 1 (<0.1); "
        f"eps=0.05 stds max {hi:.3f} (<0.2); "
        f"pooled std ratio vs no-error fraction dev {worst_ratio_dev:.3f} (<0.15) for eps<=0.01",
        t0,
        1800,
    )
    assert ok


def test_criterion_10_xeb_fidelity_tracks_no_error_fraction(tmp_path):
    t0 = time.monotonic()
    cfg = ExperimentConfig(experiment="xeb", seed=0, out_dir=str(tmp_path))
    rep = cmd_xeb(cfg)["result"]
    frac = rep["no_error_fraction"]
    pred = rep["alpha_pred_product"]
    tol_alpha = max(0.05, 3 * rep["std_err"])
    sigma_binom = math.sqrt(pred * (1 - pred) / rep["K"])
    c_alpha = abs(rep["alpha_hat"] - frac) <= tol_alpha
    c_frac = abs(frac - pred) <= 3 * sigma_binom
    ok = c_alpha and c_frac
    report(
        10,
        ok,
        f"n=12 depth 40, eps2=0.005, eps1=0.0005, k=1e5: alpha_hat {rep['alpha_hat']:.4f} vs "
        f"no-error fraction {frac:.4f} (tol {tol_alpha:.4f}); fraction vs product "
        f"prediction {pred:.4f} (3 binom sigma {3 * sigma_binom:.4f})",
        t0,
        1200,
    )
    assert ok
