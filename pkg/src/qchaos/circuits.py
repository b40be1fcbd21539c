"""Circuit ensembles: pseudo-random universal lattice circuits and sparse IQP.

The universal ensemble follows the standard supremacy-style construction on a
rows x cols lattice: one initial cycle of Hadamards, then clock cycles that
each apply a CZ layer (eight activation patterns cycling with period 8) and
single-qubit gates from {X^1/2, Y^1/2, T} on qubits idle in that CZ layer,
subject to: a qubit only receives a single-qubit gate right after it was in a
CZ; its first single-qubit gate is a T; no gate repeats immediately on the
same qubit.

The IQP ensemble is a diagonal phase function: each unordered qubit pair gets
a CZ (angle pi) with probability min(1, gamma*ln(n)/n), and each qubit gets a
Z rotation drawn from the phase rule (default: angle k*pi/4, k uniform in
0..7). f(y) = <y|D|y> is evaluable pointwise in O(#terms).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .core import N_CAP, Circuit, Gate

PHASE_RULES = ("octant", "none")


@dataclass(frozen=True)
class RandomCircuitSpec:
    rows: int
    cols: int
    depth: int
    seed: int
    single_qubit_set: tuple[str, ...] = ("x_half", "y_half", "t")

    def __post_init__(self):
        if self.rows < 1 or self.cols < 1:
            raise ValueError("lattice dimensions must be >= 1")
        if self.depth < 1:
            raise ValueError("depth must be >= 1")

    @property
    def n(self) -> int:
        return self.rows * self.cols


def _cz_layer(rows: int, cols: int, layer_index: int) -> list[tuple[int, int]]:
    """Edges activated in one CZ cycle; patterns repeat with period 8.

    Even layers couple horizontally, odd layers vertically; the shift walks
    the four stagger offsets so every lattice edge fires once per period.
    """
    dir_row = layer_index % 2
    dir_col = 1 - dir_row
    shift = (layer_index >> 1) % 4
    edges = []
    for r in range(rows):
        for c in range(cols):
            r2, c2 = r + dir_row, c + dir_col
            if r2 >= rows or c2 >= cols:
                continue
            if (r * (2 - dir_row) + c * (2 - dir_col)) % 4 != shift:
                continue
            edges.append((r * cols + c, r2 * cols + c2))
    return edges


def gen_random_universal(spec: RandomCircuitSpec) -> Circuit:
    """Generate one instance; deterministic given spec.seed."""
    if spec.n > N_CAP:
        raise ValueError(f"lattice has {spec.n} qubits, cap is {N_CAP}")
    rng = np.random.default_rng(spec.seed)
    n = spec.n
    gates = [Gate.single("h", q) for q in range(n)]
    last_1q: list[str | None] = [None] * n
    in_cz_prev: set[int] = set()
    for cycle in range(spec.depth):
        edges = _cz_layer(spec.rows, spec.cols, cycle % 8)
        in_cz_now = {q for e in edges for q in e}
        for a, b in edges:
            gates.append(Gate.cz(a, b))
        for q in range(n):
            if q in in_cz_now or q not in in_cz_prev:
                continue
            if last_1q[q] is None:
                name = "t"
            else:
                options = [g for g in spec.single_qubit_set if g != last_1q[q]]
                name = str(rng.choice(options))
            gates.append(Gate.single(name, q))
            last_1q[q] = name
        in_cz_prev = in_cz_now
    return Circuit(n, tuple(gates), depth=spec.depth)


@dataclass(frozen=True)
class SparseIqpSpec:
    n: int
    gamma: float
    seed: int
    single_qubit_phase_rule: str = "octant"

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("n must be >= 2")
        if self.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if self.single_qubit_phase_rule not in PHASE_RULES:
            raise ValueError(f"phase rule must be one of {PHASE_RULES}")

    @property
    def edge_prob(self) -> float:
        return min(1.0, self.gamma * np.log(self.n) / self.n)


@dataclass(frozen=True)
class DiagonalCircuit:
    """Phase function of an IQP diagonal: f(y) = exp(i*[sum of active angles])."""

    n: int
    z_terms: tuple[tuple[int, float], ...]
    zz_terms: tuple[tuple[int, int, float], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "z_terms", tuple((int(q), float(a)) for q, a in self.z_terms)
        )
        object.__setattr__(
            self,
            "zz_terms",
            tuple((int(i), int(j), float(a)) for i, j, a in self.zz_terms),
        )
        for q, _ in self.z_terms:
            if not 0 <= q < self.n:
                raise ValueError(f"z term qubit {q} out of range")
        for i, j, _ in self.zz_terms:
            if i == j or not (0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"zz term qubits ({i},{j}) invalid")

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "z": [{"q": q, "angle": a} for q, a in self.z_terms],
                "zz": [{"i": i, "j": j, "angle": a} for i, j, a in self.zz_terms],
            }
        )

    @classmethod
    def from_json(cls, doc: str) -> "DiagonalCircuit":
        d = json.loads(doc)
        return cls(
            d["n"],
            tuple((t["q"], t["angle"]) for t in d["z"]),
            tuple((t["i"], t["j"], t["angle"]) for t in d["zz"]),
        )


def gen_sparse_iqp(spec: SparseIqpSpec) -> DiagonalCircuit:
    """Generate one sparse IQP diagonal; deterministic given spec.seed."""
    rng = np.random.default_rng(spec.seed)
    prob = spec.edge_prob
    zz = []
    for j in range(spec.n):
        for k in range(j + 1, spec.n):
            if rng.random() < prob:
                zz.append((j, k, np.pi))
    z = []
    if spec.single_qubit_phase_rule == "octant":
        for q in range(spec.n):
            z.append((q, int(rng.integers(8)) * np.pi / 4))
    return DiagonalCircuit(spec.n, tuple(z), tuple(zz))


def eval_f(d: DiagonalCircuit, y: int) -> complex:
    """f(y) = <y|D|y>; unit modulus; O(#terms)."""
    phase = 0.0
    for q, a in d.z_terms:
        if (y >> q) & 1:
            phase += a
    for i, j, a in d.zz_terms:
        if (y >> i) & 1 and (y >> j) & 1:
            phase += a
    return complex(np.exp(1j * phase))


def eval_f_batch(d: DiagonalCircuit, ys: np.ndarray) -> np.ndarray:
    """Vectorized f over an array of basis indices."""
    ys = np.asarray(ys, dtype=np.int64)
    phase = np.zeros(ys.shape, dtype=float)
    for q, a in d.z_terms:
        phase += a * ((ys >> q) & 1)
    for i, j, a in d.zz_terms:
        phase += a * (((ys >> i) & 1) & ((ys >> j) & 1))
    return np.exp(1j * phase)


def f_table(d: DiagonalCircuit) -> np.ndarray:
    """f over all 2^n basis indices, accumulated by strided block adds."""
    if d.n > N_CAP:
        raise ValueError(f"n={d.n} exceeds cap {N_CAP}")
    phase = np.zeros(1 << d.n)
    for q, a in d.z_terms:
        phase.reshape(-1, 2, 1 << q)[:, 1, :] += a
    for i, j, a in d.zz_terms:
        hi, lo = max(i, j), min(i, j)
        phase.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)[:, 1, :, 1, :] += a
    return np.exp(1j * phase)


def iqp_prob_dist(d: DiagonalCircuit) -> np.ndarray:
    """Output distribution p(x) = |2^-n sum_y f(y)(-1)^{x.y}|^2 via fast WHT."""
    from .fourier import wht  # local import: fourier imports this module at load time

    fhat = wht(f_table(d))
    return np.abs(fhat) ** 2
