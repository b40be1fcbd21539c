"""Tour of the state-vector simulator: gates, circuits, sampling.

Run from the repository root after `pip install -e .`:

    python3 demos/statevector_basics.py
"""

import numpy as np

from qchaos.circuits import RandomCircuitSpec, gen_random_universal
from qchaos.core import Circuit, Gate, apply_gate, probabilities, run, sample, zero_state
from qchaos.stats import entropy

print("=" * 60)
print("1. Bell pair from scratch")
print("=" * 60)

bell = Circuit(
    n=2,
    gates=(
        Gate.single("h", 0),
        Gate.single("h", 1),
        Gate.cz(0, 1),
        Gate.single("h", 1),
    ),
)
state = run(bell)
print("amplitudes:", np.round(state, 6))
print("probabilities:", np.round(probabilities(state), 6))

draws = sample(probabilities(state), k=10, seed=1)
print("ten samples (qubit 0 is the least significant bit):", draws)

print()
print("=" * 60)
print("2. Gate application is pure; states can be inspected layer by layer")
print("=" * 60)

psi = zero_state(2)
for g in bell.gates:
    psi = apply_gate(psi, g)
    print(f"after {g.name} on {g.qubits}: {np.round(psi, 4)}")

print()
print("=" * 60)
print("3. A random universal circuit on a 2x3 lattice")
print("=" * 60)

spec = RandomCircuitSpec(rows=2, cols=3, depth=12, seed=7)
circuit = gen_random_universal(spec)
print(f"qubits: {circuit.n}, gates: {circuit.gate_count}, depth: {circuit.depth}")

p = probabilities(run(circuit))
print(f"entropy of the output distribution: {entropy(p):.4f} nats")
print(f"uniform entropy would be {circuit.n * np.log(2):.4f} nats")
print(f"largest output probability: {p.max():.6f} at x = {int(p.argmax())}")
