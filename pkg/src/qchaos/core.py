"""Dense state-vector simulation of few-qubit circuits.

Basis index x in [0, 2^n) encodes qubit 0 as the least-significant bit.
For a two-qubit gate on qubits (a, b) the 4x4 matrix acts on the local
index 2*bit_a + bit_b, i.e. the first-listed qubit is the high bit.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

N_CAP = 26  # 2^26 complex amplitudes ~ 1 GiB; larger states are out of scope

_SQ = 1 / np.sqrt(2)
GATES_1Q = {
    "h": np.array([[_SQ, _SQ], [_SQ, -_SQ]], dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "t": np.array([[1, 0], [0, np.exp(1j * np.pi / 4)]], dtype=complex),
    "x_half": 0.5 * np.array([[1 + 1j, 1 - 1j], [1 - 1j, 1 + 1j]], dtype=complex),
    "y_half": 0.5 * np.array([[1 + 1j, -1 - 1j], [1 + 1j, 1 + 1j]], dtype=complex),
}

_UNITARY_TOL = 1e-10


@dataclass(frozen=True)
class Gate:
    """A 1- or 2-qubit unitary with its explicit matrix."""

    matrix: np.ndarray
    qubits: tuple[int, ...]
    name: str = ""
    params: tuple[float, ...] = ()

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        k = len(self.qubits)
        if k not in (1, 2):
            raise ValueError("gates act on one or two qubits")
        if len(set(self.qubits)) != k:
            raise ValueError("gate qubits must be distinct")
        if any(q < 0 for q in self.qubits):
            raise ValueError("negative qubit index")
        dim = 2**k
        if m.shape != (dim, dim):
            raise ValueError(f"matrix shape {m.shape} does not match {k} qubit(s)")
        if np.max(np.abs(m @ m.conj().T - np.eye(dim))) > _UNITARY_TOL:
            raise ValueError("matrix is not unitary within 1e-10")

    @classmethod
    def single(cls, name: str, q: int) -> "Gate":
        return cls(GATES_1Q[name], (q,), name)

    @classmethod
    def one_qubit(cls, matrix, q: int, name: str = "u1") -> "Gate":
        return cls(matrix, (q,), name)

    @classmethod
    def two_qubit(cls, matrix, a: int, b: int, name: str = "u2") -> "Gate":
        return cls(matrix, (a, b), name)

    @classmethod
    def phase(cls, theta: float, q: int) -> "Gate":
        return cls(np.diag([1, np.exp(1j * theta)]), (q,), "phase", (float(theta),))

    @classmethod
    def cphase(cls, theta: float, a: int, b: int) -> "Gate":
        return cls(
            np.diag([1, 1, 1, np.exp(1j * theta)]), (a, b), "cphase", (float(theta),)
        )

    @classmethod
    def cz(cls, a: int, b: int) -> "Gate":
        return cls(np.diag([1.0, 1, 1, -1]), (a, b), "cz")


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...]
    depth: int | None = None

    def __post_init__(self):
        if not 1 <= self.n <= N_CAP:
            raise ValueError(f"n must be in [1, {N_CAP}]")
        object.__setattr__(self, "gates", tuple(self.gates))
        for g in self.gates:
            if max(g.qubits) >= self.n:
                raise ValueError(f"gate on qubit {max(g.qubits)} exceeds n={self.n}")

    @property
    def gate_count(self) -> int:
        return len(self.gates)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "depth": self.depth,
                "gates": [_gate_to_dict(g) for g in self.gates],
            }
        )

    @classmethod
    def from_json(cls, doc: str) -> "Circuit":
        d = json.loads(doc)
        return cls(d["n"], tuple(_gate_from_dict(g) for g in d["gates"]), d.get("depth"))


def _gate_to_dict(g: Gate) -> dict:
    out: dict = {"kind": g.name or ("u1" if len(g.qubits) == 1 else "u2"), "qubits": list(g.qubits)}
    if g.name in GATES_1Q or g.name == "cz":
        pass
    elif g.name in ("phase", "cphase"):
        out["params"] = list(g.params)
    else:
        out["kind"] = "u1" if len(g.qubits) == 1 else "u2"
        m = g.matrix.ravel()
        out["params"] = [v for z in m for v in (z.real, z.imag)]
    return out


def _gate_from_dict(d: dict) -> Gate:
    kind, qubits = d["kind"], d["qubits"]
    params = d.get("params", [])
    if kind in GATES_1Q:
        return Gate.single(kind, qubits[0])
    if kind == "cz":
        return Gate.cz(*qubits)
    if kind == "phase":
        return Gate.phase(params[0], qubits[0])
    if kind == "cphase":
        return Gate.cphase(params[0], *qubits)
    if kind in ("u1", "u2"):
        k = len(qubits)
        dim = 2**k
        flat = np.array(params[0::2]) + 1j * np.array(params[1::2])
        return Gate(flat.reshape(dim, dim), tuple(qubits), kind)
    raise ValueError(f"unknown gate kind {kind!r}")


def zero_state(n: int) -> np.ndarray:
    if not 1 <= n <= N_CAP:
        raise ValueError(f"n must be in [1, {N_CAP}]")
    amps = np.zeros(1 << n, dtype=complex)
    amps[0] = 1.0
    return amps


def apply_gate(amps: np.ndarray, g: Gate) -> np.ndarray:
    """Return U_g |psi>. Never mutates the input."""
    n = _qubit_count(amps)
    if max(g.qubits) >= n:
        raise ValueError(f"gate on qubit {max(g.qubits)} exceeds n={n}")
    if len(g.qubits) == 1:
        return _apply_1q(amps, g.matrix, g.qubits[0])
    return _apply_2q(amps, g.matrix, g.qubits)


def _qubit_count(amps: np.ndarray) -> int:
    n = int(np.log2(amps.size) + 0.5)
    if 1 << n != amps.size:
        raise ValueError("state length is not a power of two")
    return n


def _apply_1q(amps: np.ndarray, m: np.ndarray, q: int) -> np.ndarray:
    v = amps.reshape(-1, 2, 1 << q)
    out = np.empty_like(v)
    a0, a1 = v[:, 0, :], v[:, 1, :]
    out[:, 0, :] = m[0, 0] * a0 + m[0, 1] * a1
    out[:, 1, :] = m[1, 0] * a0 + m[1, 1] * a1
    return out.reshape(-1)


def _apply_2q(amps: np.ndarray, m: np.ndarray, qubits: tuple[int, int]) -> np.ndarray:
    a, b = qubits
    hi, lo = max(a, b), min(a, b)
    v = amps.reshape(-1, 2, 1 << (hi - lo - 1), 2, 1 << lo)

    # local index of (bit_hi, bit_lo) under the 2*bit_a + bit_b convention
    def loc(bhi: int, blo: int) -> int:
        return 2 * bhi + blo if a == hi else 2 * blo + bhi

    blocks = {loc(i, j): v[:, i, :, j, :] for i in (0, 1) for j in (0, 1)}
    out = np.empty_like(v)
    diag = np.diag(np.diag(m))
    if np.count_nonzero(m - diag) == 0:
        d = np.diag(m)
        for i in (0, 1):
            for j in (0, 1):
                out[:, i, :, j, :] = d[loc(i, j)] * blocks[loc(i, j)]
    else:
        for i in (0, 1):
            for j in (0, 1):
                r = loc(i, j)
                out[:, i, :, j, :] = sum(m[r, c] * blocks[c] for c in range(4))
    return out.reshape(-1)


def run(c: Circuit) -> np.ndarray:
    """Apply all gates in order to |0...0>."""
    amps = zero_state(c.n)
    for g in c.gates:
        amps = apply_gate(amps, g)
    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1) > 1e-9:
        raise RuntimeError(f"norm drifted to {norm}")
    return amps


def run_states(c: Circuit) -> list[np.ndarray]:
    """States after each gate prefix: length gate_count + 1, first is |0...0>."""
    amps = zero_state(c.n)
    states = [amps]
    for g in c.gates:
        amps = apply_gate(amps, g)
        states.append(amps)
    return states


def probabilities(amps: np.ndarray) -> np.ndarray:
    p = np.abs(amps) ** 2
    return p


def check_prob_dist(p: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.min() < 0:
        raise ValueError("negative probability entry")
    if abs(p.sum() - 1) > tol:
        raise ValueError(f"probabilities sum to {p.sum()}, not 1")
    return p


def sample(probs: np.ndarray, k: int, seed) -> np.ndarray:
    """k i.i.d. basis-index draws by CDF inversion; deterministic given seed."""
    if k < 1:
        raise ValueError("k must be >= 1")
    p = check_prob_dist(probs)
    cdf = np.cumsum(p)
    cdf[-1] = 1.0
    rng = np.random.default_rng(seed)
    return np.searchsorted(cdf, rng.random(k), side="right").astype(np.int64)
