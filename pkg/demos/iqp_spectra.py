"""Fourier spectra of diagonal (IQP-style) circuits.

The output distribution of H^n D H^n applied to |0..0> is the squared
Walsh-Hadamard transform of the diagonal's phase function f(y).  Its
spectrum can be read off exactly by a convolution over f, and estimated
by Monte Carlo with Hoeffding sample counts.

    python3 demos/iqp_spectra.py
"""

import numpy as np

from qchaos.bits import hamming_weight_table
from qchaos.circuits import SparseIqpSpec, gen_sparse_iqp, iqp_prob_dist
from qchaos.fourier import (
    EstimatorBudget,
    exact_component_convolution,
    mc_estimate_component,
    wht,
)

n = 10
spec = SparseIqpSpec(n=n, gamma=2.0, seed=1)
d = gen_sparse_iqp(spec)
print(f"sparse diagonal on {n} qubits, edge probability {spec.edge_prob:.3f}")
print(f"z terms: {len(d.z_terms)}, zz terms: {len(d.zz_terms)}")

p = iqp_prob_dist(d)
coeffs = wht(p)
print(f"normalization: 2^n * coeffs[0] = {(1 << n) * coeffs[0]:.6f} (always 1)")

print()
print("=" * 60)
print("1. The spectrum is exactly sparse at low weight")
print("=" * 60)

w = hamming_weight_table(n)
rescaled = (1 << n) * coeffs
for weight in range(1, 6):
    sel = rescaled[w == weight]
    nonzero = sel[np.abs(sel) > 1e-12]
    print(
        f"weight {weight}: {nonzero.size:3d} of {sel.size:3d} components nonzero"
        + (f", magnitudes {sorted(set(np.round(np.abs(nonzero), 4)))}" if nonzero.size else "")
    )
print("nonzero values are +-2^(k/2): the per-qubit factors of the")
print("convolution are 0, sqrt(2), or 2 for eighth-turn phases")

print()
print("=" * 60)
print("2. Exact convolution equals the transform of the distribution")
print("=" * 60)

nonzero_masks = np.flatnonzero(np.abs(rescaled) > 1e-12)[1:]
rng = np.random.default_rng(2)
for s in [*nonzero_masks[:3], int(rng.integers(1, 1 << n))]:
    conv = exact_component_convolution(d, int(s))
    spectral = (1 << n) * coeffs[int(s)]
    print(f"s = {int(s):4d} (weight {int(w[int(s)])}): convolution {conv:+.6f}, "
          f"2^n * coeffs[s] {spectral:+.6f}")

print()
print("=" * 60)
print("3. Monte-Carlo estimation at a Hoeffding budget")
print("=" * 60)

budget = EstimatorBudget.for_error(eta=0.1, fail_prob=0.01)
print(f"eta = 0.1, fail_prob = 0.01 -> M = {budget.M} samples per component")
worst = 0.0
for s in rng.integers(1, 1 << n, size=10):
    est = mc_estimate_component(d, int(s), budget, seed=[5, int(s)])
    truth = exact_component_convolution(d, int(s))
    worst = max(worst, abs(est - truth))
print(f"worst additive error over 10 components: {worst:.4f} (bound 0.1)")
