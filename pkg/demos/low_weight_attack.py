"""Reconstructing a noisy diagonal-circuit distribution from low-weight
Fourier components, at a polynomial and at an exponential sample budget.

Noise suppresses weight-|s| components by (1 - eps)^|s|, which suggests
estimating only components with |s| <= l.  The catch is the estimator
budget: resolving components of typical size 2^(-n/2) needs eta of that
order, and Hoeffding sampling costs O(1/eta^2) = O(2^n).

    python3 demos/low_weight_attack.py
"""

import numpy as np

from qchaos.circuits import SparseIqpSpec, gen_sparse_iqp, iqp_prob_dist
from qchaos.fourier import (
    EstimatorBudget,
    ReconstructionConfig,
    choose_l,
    decay_spectrum,
    iwht,
    low_weight_reconstruct,
    spectral_correlation,
    wht,
)

n, eps, l = 10, 0.1, 4
d = gen_sparse_iqp(SparseIqpSpec(n=n, gamma=2.0, seed=3))
N = 1 << n
exact_spectrum = wht(iqp_prob_dist(d))
p_eps = iwht(decay_spectrum(exact_spectrum, eps))
l1_uniform = np.abs(p_eps - 1 / N).sum()

print(f"n = {n}, noise eps = {eps}, keeping weights <= {l}")
print(f"choose_l(beta=2, delta=0.5, eps={eps}) suggests l = {choose_l(2.0, 0.5, eps, n)}")
print(f"l1(uniform, noisy target) = {l1_uniform:.4f}  <- baseline to beat")

def attack(budget, label):
    cfg = ReconstructionConfig(l=l, budget=budget, eps=eps)
    res = low_weight_reconstruct(d, cfg, seed=1)
    masks = res.masks[res.masks != 0]
    est = np.zeros(N)
    est[masks] = res.estimates[res.masks != 0] / N
    r = spectral_correlation(est, exact_spectrum, masks=masks)
    l1 = np.abs(res.q_signed - p_eps).sum()
    per = res.samples_per_component
    print(f"\n{label}")
    print(f"  samples per component: {per if per else 'exact'}"
          + (f" (total {res.total_samples})" if per else ""))
    print(f"  correlation with the exact spectrum over {masks.size} components: {r:.4f}")
    print(f"  l1(reconstruction, noisy target) = {l1:.4f} ({l1 / l1_uniform:.2f}x uniform)")

print()
print("=" * 60)
attack(None, "Exact components (infinite-budget limit)")
attack(
    EstimatorBudget.for_error(0.25, 0.01),
    "Constant budget eta = 0.25: estimator noise sigma ~ 0.054",
)
attack(
    EstimatorBudget.for_error(2.0 ** (-n / 2) / 10, 0.01),
    "Exponential budget eta = 2^(-n/2)/10",
)

print()
print("The constant-budget reconstruction is dominated by estimator noise:")
print("its l1 error exceeds guessing uniform, even though the isolated")
print("large components of this circuit family make the correlation visible.")
print("Resolving generic 2^(-n/2)-scale spectra requires the exponential budget.")
