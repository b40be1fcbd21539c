"""Depolarizing noise: trajectory averaging and the spectral decay law.

Two independent routes to the same noisy distribution:
  * insert explicit Pauli errors gate by gate and average trajectories
  * multiply each Fourier component by (1 - eps)^|s| (pre-measurement
    depolarizing noise commutes into the spectrum)

    python3 demos/noise_decay.py
"""

import numpy as np

from qchaos.circuits import RandomCircuitSpec, gen_random_universal
from qchaos.core import probabilities, run
from qchaos.fourier import decay_spectrum, iwht, wht
from qchaos.noise import NoiseModel, alpha_pred, premeasurement_depolarize, run_trajectories
from qchaos.stats import sample_haar_probdist

print("=" * 60)
print("1. Spectral decay equals the per-qubit classical channel")
print("=" * 60)

p = sample_haar_probdist(8, seed=3)
for eps in (0.0, 0.1, 0.5):
    via_spectrum = iwht(decay_spectrum(wht(p), eps))
    via_channel = premeasurement_depolarize(p, eps)
    print(f"eps = {eps}: max |difference| = {np.abs(via_spectrum - via_channel).max():.2e}")

print()
print("=" * 60)
print("2. Trajectory averaging on a noisy lattice circuit")
print("=" * 60)

circuit = gen_random_universal(RandomCircuitSpec(rows=2, cols=3, depth=16, seed=11))
noise = NoiseModel(eps1=0.002, eps2=0.02)
K = 4000
result = run_trajectories(circuit, noise, K=K, seed=4)
print(f"gates: {circuit.gate_count}, trajectories: {K}")
print(f"no-error fraction: {result.no_error_fraction:.4f}")

pred = alpha_pred(circuit, noise)
print(f"product prediction prod(1 - eps_g):   {pred.product:.4f}")
print(f"exponential prediction exp(-sum eps): {pred.exponential:.4f}")

print()
print("=" * 60)
print("3. The noisy distribution drifts toward uniform")
print("=" * 60)

p_ideal = probabilities(run(circuit))
uniform = 1.0 / p_ideal.size
l1_ideal = np.abs(p_ideal - uniform).sum()
l1_noisy = np.abs(result.avg_dist - uniform).sum()
print(f"l1(ideal, uniform) = {l1_ideal:.4f}")
print(f"l1(noisy, uniform) = {l1_noisy:.4f}")
print(f"ratio {l1_noisy / l1_ideal:.4f} tracks the no-error fraction {result.no_error_fraction:.4f}")
