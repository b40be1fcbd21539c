"""Depolarizing noise: Pauli trajectories, readout channel, global ansatz.

Three views of the same per-gate depolarizing model are provided:

* stochastic Pauli trajectories (`run_trajectories`), where each gate is
  followed, with that gate's error rate, by a uniformly random
  non-identity Pauli on the gate's qubits;
* the exact per-qubit classical depolarizing map on an output
  distribution just before readout (`premeasurement_depolarize`);
* the global-depolarizing ansatz `alpha * p + (1 - alpha) / N` together
  with the fidelity predicted from per-gate rates (`ansatz_dist`,
  `alpha_pred`).
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import (
    Circuit,
    Gate,
    apply_gate,
    check_prob_dist,
    probabilities,
    run_states,
    zero_state,
)

# Trajectories are reduced in fixed chunks of this size so that the
# floating-point accumulation order is identical for any thread count.
_CHUNK = 64

# Cap on the prefix-state cache; above this, errored trajectories replay
# the gate list from scratch instead.
_STATE_CACHE_BYTES = 256 * 1024 * 1024


@dataclass(frozen=True)
class NoiseModel:
    """Per-gate and pre-measurement depolarizing rates, each in [0, 1]."""

    eps1: float = 0.0
    eps2: float = 0.0
    eps_meas: float = 0.0

    def __post_init__(self):
        for name in ("eps1", "eps2", "eps_meas"):
            r = getattr(self, name)
            if not 0.0 <= r <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {r}")

    def rate_for_gate(self, g: Gate) -> float:
        return self.eps1 if len(g.qubits) == 1 else self.eps2

    def to_json(self) -> str:
        return json.dumps(
            {"eps1": self.eps1, "eps2": self.eps2, "eps_meas": self.eps_meas}
        )

    @classmethod
    def from_json(cls, doc: str) -> "NoiseModel":
        d = json.loads(doc)
        return cls(
            eps1=d.get("eps1", 0.0),
            eps2=d.get("eps2", 0.0),
            eps_meas=d.get("eps_meas", 0.0),
        )


def premeasurement_depolarize(dist: np.ndarray, eps: float) -> np.ndarray:
    """Depolarize each qubit's readout with probability ``eps``.

    With probability ``eps`` a qubit's recorded bit is replaced by a fair
    coin flip, independently per qubit.  On the distribution this acts,
    qubit by qubit, as ``p' = (1 - eps/2) p + (eps/2) p_bitflipped``; on
    the Walsh spectrum it multiplies coefficient s by ``(1 - eps)^|s|``.
    """
    if not 0.0 <= eps <= 1.0:
        raise ValueError(f"eps must lie in [0, 1], got {eps}")
    p = check_prob_dist(dist)
    n = (p.size - 1).bit_length()
    if 1 << n != p.size:
        raise ValueError("distribution length is not a power of two")
    if eps == 0.0:
        return p.copy()
    out = p
    keep, flip = 1.0 - eps / 2.0, eps / 2.0
    for q in range(n):
        v = out.reshape(-1, 2, 1 << q)
        out = (keep * v + flip * v[:, ::-1, :]).reshape(-1)
    return out


@dataclass(frozen=True)
class TrajectoryResult:
    """Averaged output of a batch of Pauli-trajectory simulations."""

    avg_dist: np.ndarray
    no_error_count: int
    K: int
    seed: int

    @property
    def no_error_fraction(self) -> float:
        return self.no_error_count / self.K

    def to_json(self) -> str:
        return json.dumps(
            {
                "K": self.K,
                "seed": self.seed,
                "no_error_count": self.no_error_count,
                "no_error_fraction": self.no_error_fraction,
                "avg_dist": self.avg_dist.tolist(),
            }
        )


def _apply_pauli_inplace(state: np.ndarray, q: int, k: int) -> None:
    """Apply X (k=1), Y (k=2) or Z (k=3) on qubit q, mutating state."""
    v = state.reshape(-1, 2, 1 << q)
    if k == 1:
        v[:, [0, 1], :] = v[:, [1, 0], :]
    elif k == 2:
        tmp = v[:, 0, :].copy()
        v[:, 0, :] = -1j * v[:, 1, :]
        v[:, 1, :] = 1j * tmp
    else:
        v[:, 1, :] *= -1


def _insert_error(state: np.ndarray, g: Gate, rng: np.random.Generator) -> None:
    """Draw and apply a uniform non-identity Pauli on g's qubits."""
    if len(g.qubits) == 1:
        _apply_pauli_inplace(state, g.qubits[0], int(rng.integers(1, 4)))
    else:
        a, b = divmod(int(rng.integers(1, 16)), 4)
        if a:
            _apply_pauli_inplace(state, g.qubits[0], a)
        if b:
            _apply_pauli_inplace(state, g.qubits[1], b)


def _trajectory_dist(
    c: Circuit,
    rates: np.ndarray,
    prefix_states: list[np.ndarray] | None,
    seed: int,
    idx: int,
) -> np.ndarray | None:
    """One trajectory's output distribution, or None if no error fired.

    The error coin flips for all gates are drawn in a single block before
    any Pauli choice, so the random stream is identical whether or not
    the error-free prefix is skipped.
    """
    rng = np.random.default_rng([seed, idx])
    fired = np.flatnonzero(rng.random(rates.size) < rates)
    if fired.size == 0:
        return None
    first = int(fired[0])
    if prefix_states is not None:
        state = prefix_states[first + 1].copy()
    else:
        state = zero_state(c.n)
        for g in c.gates[: first + 1]:
            state = apply_gate(state, g)
    _insert_error(state, c.gates[first], rng)
    later = set(int(i) for i in fired[1:])
    for i in range(first + 1, len(c.gates)):
        state = apply_gate(state, c.gates[i])
        if i in later:
            _insert_error(state, c.gates[i], rng)
    return probabilities(state)


def _chunk_partial(
    c: Circuit,
    rates: np.ndarray,
    prefix_states: list[np.ndarray] | None,
    seed: int,
    lo: int,
    hi: int,
) -> tuple[np.ndarray, int]:
    total = np.zeros(1 << c.n)
    clean = 0
    for idx in range(lo, hi):
        d = _trajectory_dist(c, rates, prefix_states, seed, idx)
        if d is None:
            clean += 1
        else:
            total += d
    return total, clean


def run_trajectories(
    c: Circuit, nm: NoiseModel, K: int, seed: int, threads: int = 1
) -> TrajectoryResult:
    """Average K Pauli-error trajectories of circuit ``c`` under ``nm``.

    Each trajectory uses its own random stream seeded by (seed, index),
    and partial sums are reduced in fixed index order, so the result is
    bit-identical for any ``threads`` value.  Error-free trajectories
    reuse a single ideal run; errored ones resume from a cached prefix
    state when the cache fits in memory.  The ``eps_meas`` readout
    channel is a linear map on distributions, so it is applied once to
    the trajectory average rather than sampled per trajectory.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if threads < 1:
        raise ValueError("threads must be >= 1")
    rates = np.array([nm.rate_for_gate(g) for g in c.gates])
    m = rates.size
    cache_ok = (m + 1) * (1 << c.n) * 16 <= _STATE_CACHE_BYTES
    if np.any(rates > 0) and cache_ok:
        prefix_states = run_states(c)
        p_ideal = probabilities(prefix_states[-1])
    else:
        prefix_states = None
        amps = zero_state(c.n)
        for g in c.gates:
            amps = apply_gate(amps, g)
        p_ideal = probabilities(amps)

    bounds = [(lo, min(lo + _CHUNK, K)) for lo in range(0, K, _CHUNK)]
    if threads == 1 or len(bounds) == 1:
        partials = [
            _chunk_partial(c, rates, prefix_states, seed, lo, hi)
            for lo, hi in bounds
        ]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(_chunk_partial, c, rates, prefix_states, seed, lo, hi)
                for lo, hi in bounds
            ]
            partials = [f.result() for f in futures]

    err_total = np.zeros(1 << c.n)
    clean = 0
    for total, part_clean in partials:
        err_total += total
        clean += part_clean
    avg = (clean / K) * p_ideal + err_total / K
    if nm.eps_meas > 0.0:
        avg = premeasurement_depolarize(avg, nm.eps_meas)
    return TrajectoryResult(
        avg_dist=check_prob_dist(avg), no_error_count=clean, K=K, seed=seed
    )


def ansatz_dist(ideal: np.ndarray, alpha: float) -> np.ndarray:
    """Mix the ideal distribution with uniform: alpha*p + (1-alpha)/N."""
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    p = check_prob_dist(ideal)
    return alpha * p + (1.0 - alpha) / p.size


class AlphaPrediction(NamedTuple):
    """Predicted no-error probability: exact product and its exp form."""

    product: float
    exponential: float


def alpha_pred(c: Circuit, nm: NoiseModel) -> AlphaPrediction:
    """Predict the no-error fraction from per-gate rates.

    ``product`` is the exact prod(1 - eps_gate); ``exponential`` is the
    large-m approximation exp(-sum(eps_gate)).
    """
    rates = np.array([nm.rate_for_gate(g) for g in c.gates])
    return AlphaPrediction(
        product=float(np.prod(1.0 - rates)),
        exponential=float(np.exp(-np.sum(rates))),
    )
