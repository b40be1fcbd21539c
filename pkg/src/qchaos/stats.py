"""Porter-Thomas statistics, cross-entropy fidelity, and spectrum tests.

Everything is in natural log (nats); the reference formulas built around
Euler's constant are natural-log identities.  Deterministic given seeds.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy import stats as sps
from scipy.special import xlogy

from . import bits
from .core import check_prob_dist

EULER_GAMMA = float(np.euler_gamma)

_MIN_GAUSSIAN_POOL = 10_000


@dataclass(frozen=True)
class PTReference:
    """Porter-Thomas reference values for an n-qubit system."""

    n: int
    entropy_ref: float
    euler_gamma: float
    l1_to_uniform_ref: float
    second_moment_ref: float
    fourier_std_ref: float

    @classmethod
    def for_qubits(cls, n: int) -> "PTReference":
        if n < 1:
            raise ValueError("n must be >= 1")
        N = float(1 << n)
        return cls(
            n=n,
            entropy_ref=n * math.log(2.0) + EULER_GAMMA - 1.0,
            euler_gamma=EULER_GAMMA,
            l1_to_uniform_ref=2.0 / math.e,
            second_moment_ref=2.0 / N,
            fourier_std_ref=N**-1.5,
        )


def sample_haar_probdist(n: int, seed) -> np.ndarray:
    """Output distribution of a Haar-random n-qubit state.

    Amplitudes are i.i.d. standard complex Gaussians, normalized; the
    squared magnitudes are then exactly Haar-distributed.
    """
    rng = np.random.default_rng(seed)
    N = 1 << n
    z = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    p = np.abs(z) ** 2
    return p / p.sum()


def entropy(dist: np.ndarray) -> float:
    """Shannon entropy -sum p ln p in nats, with 0 ln 0 = 0."""
    p = check_prob_dist(dist)
    return float(-xlogy(p, p).sum())


@dataclass(frozen=True)
class XebResult:
    """Cross-entropy benchmark: alpha_hat = ln N + gamma - cross_entropy."""

    n: int
    cross_entropy: float
    alpha_hat: float
    k: int
    std_err: float

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "cross_entropy": self.cross_entropy,
                "alpha_hat": self.alpha_hat,
                "k": self.k,
                "std_err": self.std_err,
            }
        )


def xeb(samples: np.ndarray, ideal: np.ndarray) -> XebResult:
    """Estimate fidelity from samples scored against the ideal distribution.

    cross_entropy is the sample mean of ln(1/p_ideal(x_j)); for chaotic
    circuits its ideal-sampling value is ln N + gamma - 1 and its
    uniform-sampling value is ln N + gamma, which makes
    alpha_hat = ln N + gamma - cross_entropy a fidelity estimate.
    """
    x = np.asarray(samples, dtype=np.int64)
    if x.ndim != 1 or x.size < 1:
        raise ValueError("samples must be a nonempty 1-D index array")
    p = check_prob_dist(ideal)
    n = (p.size - 1).bit_length()
    if x.min() < 0 or x.max() >= p.size:
        raise ValueError("sample index out of range")
    px = p[x]
    zeros = int(np.count_nonzero(px == 0))
    if zeros:
        raise ValueError(
            f"{zeros} of {x.size} samples fall on zero ideal probability"
        )
    log_inv = -np.log(px)
    cross = float(log_inv.mean())
    std_err = (
        float(log_inv.std(ddof=1) / math.sqrt(x.size)) if x.size > 1 else math.inf
    )
    return XebResult(
        n=n,
        cross_entropy=cross,
        alpha_hat=n * math.log(2.0) + EULER_GAMMA - cross,
        k=int(x.size),
        std_err=std_err,
    )


def check_report(name: str, statistic: float, reference: float, tolerance=None) -> dict:
    """One test-report entry: {name, statistic, reference, tolerance, pass}.

    With a tolerance the check is |statistic - reference| <= tolerance;
    without one it is a threshold check statistic >= reference (used for
    p-values).
    """
    if tolerance is None:
        ok = bool(statistic >= reference)
    else:
        ok = bool(abs(statistic - reference) <= tolerance)
    return {
        "name": name,
        "statistic": float(statistic),
        "reference": float(reference),
        "tolerance": None if tolerance is None else float(tolerance),
        "pass": ok,
    }


@dataclass(frozen=True)
class GaussianFitReport:
    """Fit of pooled nonzero-mask Fourier components to the PT Gaussian."""

    n: int
    pool_size: int
    mean: float
    std: float
    ks_stat: float
    ks_pvalue: float
    degenerate: bool

    @property
    def fourier_std_ref(self) -> float:
        return float(1 << self.n) ** -1.5

    def to_json(self) -> str:
        ref = self.fourier_std_ref
        checks = [
            check_report(
                "mean", self.mean, 0.0, 3.0 * ref / math.sqrt(self.pool_size)
            ),
            check_report("std", self.std, ref, 0.05 * ref),
            check_report("ks_pvalue", self.ks_pvalue, 0.01),
        ]
        return json.dumps(
            {
                "n": self.n,
                "pool_size": self.pool_size,
                "degenerate": self.degenerate,
                "checks": checks,
            }
        )


def fourier_gaussian_test(spectra) -> GaussianFitReport:
    """Pool s != 0 components of many spectra and fit against the PT law.

    The reference law is Normal(0, N^{-3/2}).  A zero-variance pool (for
    example from uniform distributions) is flagged degenerate instead of
    fitted.
    """
    arrays = [np.asarray(s, dtype=float) for s in spectra]
    if not arrays:
        raise ValueError("no spectra supplied")
    size = arrays[0].size
    if any(a.size != size for a in arrays):
        raise ValueError("spectra have mismatched lengths")
    n = (size - 1).bit_length()
    pooled = np.concatenate([a[1:] for a in arrays])
    if pooled.size < _MIN_GAUSSIAN_POOL:
        raise ValueError(
            f"pooled component count {pooled.size} < {_MIN_GAUSSIAN_POOL}"
        )
    mean = float(pooled.mean())
    std = float(pooled.std())
    if std == 0.0:
        return GaussianFitReport(
            n=n,
            pool_size=int(pooled.size),
            mean=mean,
            std=0.0,
            ks_stat=math.nan,
            ks_pvalue=math.nan,
            degenerate=True,
        )
    ks = sps.kstest(pooled, "norm", args=(0.0, float(1 << n) ** -1.5))
    return GaussianFitReport(
        n=n,
        pool_size=int(pooled.size),
        mean=mean,
        std=std,
        ks_stat=float(ks.statistic),
        ks_pvalue=float(ks.pvalue),
        degenerate=False,
    )


@dataclass(frozen=True)
class BipartitionSum:
    """Probability mass u on the odd-parity set S of a nonzero mask."""

    S: np.ndarray
    u: float


def bipartition_sum(dist: np.ndarray, s: int) -> BipartitionSum:
    """Sum dist over {x : x.s has odd parity} for a nonzero mask s."""
    p = check_prob_dist(dist)
    if s == 0:
        raise ValueError("mask must be nonzero")
    odd = np.flatnonzero(bits.parity(np.arange(p.size, dtype=np.uint64) & np.uint64(s)))
    return BipartitionSum(S=odd, u=float(p[odd].sum()))


@dataclass(frozen=True)
class BipartitionReport:
    """Empirical law of u against the symmetric Beta(N/2, N/2) reference."""

    n: int
    trials: int
    mean: float
    variance: float
    ks_stat: float
    ks_pvalue: float
    us: np.ndarray

    @property
    def mean_ref(self) -> float:
        return 0.5

    @property
    def variance_ref(self) -> float:
        return 1.0 / (4.0 * ((1 << self.n) + 1))

    def to_json(self) -> str:
        checks = [
            check_report("mean", self.mean, self.mean_ref, 0.01),
            check_report(
                "variance", self.variance, self.variance_ref, 0.1 * self.variance_ref
            ),
            check_report("ks_pvalue", self.ks_pvalue, 0.01),
        ]
        return json.dumps({"n": self.n, "trials": self.trials, "checks": checks})


def bipartition_sum_test(n: int, trials: int, seed) -> BipartitionReport:
    """Sample u over Haar states and random masks; compare to Beta(N/2, N/2).

    Each trial draws a fresh Haar state and a fresh nonzero mask.  The
    reference law has mean 1/2 and variance 1/(4(N+1)).
    """
    if n < 4:
        raise ValueError("n must be >= 4")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    N = 1 << n
    x = np.arange(N, dtype=np.uint64)
    us = np.empty(trials)
    for t in range(trials):
        z = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        p = np.abs(z) ** 2
        p /= p.sum()
        s = int(rng.integers(1, N))
        odd = bits.parity(x & np.uint64(s)).astype(bool)
        us[t] = p[odd].sum()
    half = N // 2
    ks = sps.kstest(us, sps.beta(half, half).cdf)
    return BipartitionReport(
        n=n,
        trials=trials,
        mean=float(us.mean()),
        variance=float(us.var(ddof=1)),
        ks_stat=float(ks.statistic),
        ks_pvalue=float(ks.pvalue),
        us=us,
    )


def collision_beta(dist: np.ndarray) -> float:
    """Collision witness N * sum p(x)^2; 1 for uniform, about 2 under PT."""
    p = check_prob_dist(dist)
    return float(p.size * np.sum(p * p))
