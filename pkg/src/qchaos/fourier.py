"""Walsh-Hadamard spectral engine and Fourier-component estimation.

Transform pair (characters (-1)^{x.s} over Z_2^n):

    coeffs[s] = 2^-n sum_x p(x) (-1)^{x.s}        (wht)
    p(x)      = sum_s coeffs[s] (-1)^{x.s}        (iwht)

The convolution route evaluates the rescaled component 2^n * coeffs[s] of an
IQP output distribution directly from the phase function f, either exactly
(one pass over all y) or by Monte-Carlo sampling with a Hoeffding budget.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass

import numpy as np

from . import bits
from .circuits import DiagonalCircuit, eval_f_batch, f_table


def fwht(vec: np.ndarray) -> np.ndarray:
    """Unnormalized in-place butterfly: out[s] = sum_x v[x] (-1)^{x.s}."""
    a = np.array(vec, copy=True)
    n = a.size
    if n & (n - 1):
        raise ValueError("length must be a power of two")
    h = 1
    while h < n:
        a = a.reshape(-1, 2 * h)
        x = a[:, :h] + a[:, h:]
        y = a[:, :h] - a[:, h:]
        a[:, :h] = x
        a[:, h:] = y
        h *= 2
    return a.reshape(-1)


def wht(dist: np.ndarray) -> np.ndarray:
    """Walsh coefficients of a distribution (or any real/complex vector)."""
    v = np.asarray(dist)
    return fwht(v) / v.size


def iwht(coeffs: np.ndarray) -> np.ndarray:
    """Exact inverse of wht; may produce negative entries for edited spectra."""
    return fwht(coeffs)


def decay_spectrum(coeffs: np.ndarray, eps: float) -> np.ndarray:
    """Scale each coefficient by (1-eps)^|s| (per-qubit pre-measurement noise)."""
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    n = _qubits_of(coeffs)
    w = bits.hamming_weight_table(n).astype(float)
    if eps == 1.0:
        factors = np.where(w == 0, 1.0, 0.0)
    else:
        factors = (1.0 - eps) ** w
    return coeffs * factors


def _qubits_of(vec: np.ndarray) -> int:
    n = int(np.log2(vec.size) + 0.5)
    if 1 << n != vec.size:
        raise ValueError("length is not a power of two")
    return n


@dataclass(frozen=True)
class EstimatorBudget:
    """Monte-Carlo budget for estimating 2^n * coeffs[s] within eta.

    Samples Re[f*(y) f(y^s)] lie in [-1, 1], so Hoeffding requires
    M >= (2/eta^2) ln(2/fail_prob) for additive error eta with probability
    >= 1 - fail_prob.
    """

    eta: float
    fail_prob: float
    M: int

    def __post_init__(self):
        if not 0 < self.eta:
            raise ValueError("eta must be positive")
        if not 0 < self.fail_prob <= 1:
            raise ValueError("fail_prob must lie in (0, 1]")
        if self.M < hoeffding_samples(self.eta, self.fail_prob):
            raise ValueError(
                f"M={self.M} below the Hoeffding requirement "
                f"{hoeffding_samples(self.eta, self.fail_prob)} for eta={self.eta}"
            )

    @classmethod
    def for_error(cls, eta: float, fail_prob: float = 0.01) -> "EstimatorBudget":
        return cls(eta, fail_prob, hoeffding_samples(eta, fail_prob))


def hoeffding_samples(eta: float, fail_prob: float) -> int:
    return math.ceil((2 / eta**2) * math.log(2 / fail_prob))


def exact_component_convolution(
    d: DiagonalCircuit, s: int, f: np.ndarray | None = None
) -> float:
    """2^-n sum_y Re[f*(y) f(y^s)], which equals 2^n * coeffs[s].

    At s=0 this is exactly 1 (normalization). Pass a precomputed f table
    to amortize repeated calls on the same circuit.
    """
    if f is None:
        f = f_table(d)
    idx = np.arange(f.size, dtype=np.int64) ^ int(s)
    return float(np.mean(np.real(np.conj(f) * f[idx])))


def mc_estimate_component(
    d: DiagonalCircuit, s: int, budget: EstimatorBudget, seed, f=None
) -> float:
    """Monte-Carlo estimate of 2^n * coeffs[s] from budget.M uniform draws.

    The draw stream depends only on (seed, budget.M). When the budget is
    large enough that tabulating f over all 2^n inputs is cheaper than
    evaluating it twice per sample, samples are gathered from the table;
    a precomputed table can also be passed in.
    """
    rng = np.random.default_rng(seed)
    y = rng.integers(0, 1 << d.n, size=budget.M, dtype=np.int64)
    if f is None and (1 << d.n) < budget.M:
        f = f_table(d)
    if f is None:
        a, b = eval_f_batch(d, y), eval_f_batch(d, y ^ int(s))
    else:
        a, b = f[y], f[y ^ int(s)]
    return float(np.real(np.conj(a) * b).mean())


@dataclass(frozen=True)
class ReconstructionConfig:
    """Settings for the low-weight reconstruction q(x) = sum_{|s|<=l} c(s)(-1)^{x.s}.

    budget=None uses exact components (the infinite-sample limit); eps is the
    pre-measurement noise rate whose (1-eps)^|s| decay weights the estimates;
    beta is the collision bound N*sum p^2 <= beta and delta the l1 target that
    together pick l via choose_l.
    """

    l: int
    budget: EstimatorBudget | None = None
    beta: float = 2.0
    delta: float = 0.1
    eps: float = 0.0

    def __post_init__(self):
        if self.l < 0:
            raise ValueError("l must be >= 0")
        if self.beta < 1:
            raise ValueError("beta must be >= 1")
        if not 0 <= self.eps <= 1:
            raise ValueError("eps must lie in [0, 1]")


@dataclass(frozen=True)
class ReconstructionResult:
    masks: np.ndarray  # estimated masks, sorted by (weight, value)
    estimates: np.ndarray  # estimates of 2^n * coeffs[s] per mask, before decay
    q_signed: np.ndarray  # signed reconstruction over all x
    dist: np.ndarray  # clipped-to-nonnegative, renormalized version
    samples_per_component: int  # 0 means exact
    total_samples: int


def low_weight_reconstruct(
    d: DiagonalCircuit, cfg: ReconstructionConfig, seed=0
) -> ReconstructionResult:
    """Reconstruct a noisy IQP distribution from low-weight components only.

    Each kept coefficient is (1-eps)^|s| * 2^-n * (estimate of 2^n coeffs[s]);
    per-component estimation uses an independent stream seeded by (seed, s),
    so results do not depend on evaluation order.
    """
    if cfg.l > d.n:
        raise ValueError(f"l={cfg.l} exceeds n={d.n}")
    n = d.n
    N = 1 << n
    masks = bits.masks_up_to_weight(n, cfg.l)
    if cfg.budget is None:
        f = f_table(d)
        estimates = np.array(
            [exact_component_convolution(d, int(s), f=f) for s in masks]
        )
        per = 0
    else:
        f_mc = f_table(d) if (1 << n) < cfg.budget.M else None
        estimates = np.array(
            [
                mc_estimate_component(
                    d, int(s), cfg.budget, seed=[seed, int(s)], f=f_mc
                )
                for s in masks
            ]
        )
        per = cfg.budget.M
    spectrum = np.zeros(N)
    w = bits.hamming_weight_table(n)[masks].astype(float)
    spectrum[masks] = (1 - cfg.eps) ** w * estimates / N
    q = iwht(spectrum)
    clipped = np.clip(q, 0, None)
    total = clipped.sum()
    dist = clipped / total if total > 0 else np.full(N, 1 / N)
    return ReconstructionResult(
        masks=masks,
        estimates=estimates,
        q_signed=q,
        dist=dist,
        samples_per_component=per,
        total_samples=per * len(masks),
    )


def choose_l(beta: float, delta: float, eps: float, n: int | None = None) -> int:
    """Max weight needed for l1 error delta: ceil(ln(beta/delta)/eps), capped at n.

    The O(.) constant is fixed at 1.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    if beta < delta:
        raise ValueError("beta must be >= delta")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    l = math.ceil(math.log(beta / delta) / eps)
    return min(n, l) if n is not None else l


def spectral_correlation(
    a: np.ndarray,
    b: np.ndarray,
    weight_range: tuple[int, int] | None = None,
    masks: np.ndarray | None = None,
) -> float:
    """Pearson correlation of two spectra over s != 0.

    Restrict to Hamming weights in weight_range (inclusive) and/or to an
    explicit mask set.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.size != b.size:
        raise ValueError("spectra must have equal length")
    n = _qubits_of(a)
    if masks is None:
        masks = np.arange(1, a.size, dtype=np.int64)
    else:
        masks = np.asarray(masks, dtype=np.int64)
        if np.any(masks == 0):
            raise ValueError("mask 0 excluded from correlation")
    if weight_range is not None:
        lo, hi = weight_range
        w = bits.hamming_weight_table(n)[masks]
        masks = masks[(w >= lo) & (w <= hi)]
    if masks.size < 2:
        raise ValueError("empty or singleton component selection")
    return float(np.corrcoef(a[masks], b[masks])[0, 1])


def spectrum_to_csv(coeffs: np.ndarray, path) -> None:
    """Export (s_bits, weight, coeff, rescaled_coeff) rows, rescale = 2^{3n/2}."""
    n = _qubits_of(coeffs)
    scale = 2.0 ** (1.5 * n)
    w = bits.hamming_weight_table(n)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s_bits", "weight", "coeff", "rescaled_coeff"])
        for s in range(coeffs.size):
            writer.writerow(
                [format(s, f"0{n}b"), int(w[s]), repr(float(coeffs[s])),
                 repr(float(coeffs[s] * scale))]
            )
