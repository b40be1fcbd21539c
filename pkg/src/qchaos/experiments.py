"""Experiment drivers emitting versioned CSV/JSON artifacts.

Four commands cover the package's headline experiments:

* `cmd_fig1`: entropies of sparse IQP circuits across a gamma sweep,
  against the chaotic-entropy reference.
* `cmd_fig2_fig3`: Fourier spectra of noisy lattice circuits across an
  error-rate sweep: scatter rows of rescaled coefficients by weight,
  plus per-(rate, weight) standard deviations.
* `cmd_attack`: low-weight spectral reconstruction report with exact
  and Monte-Carlo component estimates.
* `cmd_xeb`: cross-entropy fidelity estimate versus the trajectory
  no-error fraction and the per-gate prediction.

Outputs are deterministic for a fixed config; the thread count never
changes output bytes.  Each command writes its data files plus a JSON
manifest echoing the config, seeds, and creation time.
"""

from __future__ import annotations

import json
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import bits
from .circuits import (
    RandomCircuitSpec,
    SparseIqpSpec,
    gen_random_universal,
    gen_sparse_iqp,
    iqp_prob_dist,
)
from .core import probabilities, run, sample
from .fourier import (
    EstimatorBudget,
    ReconstructionConfig,
    decay_spectrum,
    iwht,
    low_weight_reconstruct,
    spectral_correlation,
    wht,
)
from .noise import NoiseModel, alpha_pred, run_trajectories
from .stats import PTReference, entropy, xeb

EPS_SWEEP_DEFAULT = (
    0.0,
    0.0001,
    0.0002,
    0.0005,
    0.001,
    0.002,
    0.005,
    0.01,
    0.02,
    0.05,
)

EXPERIMENTS = ("fig1", "fig2_fig3", "attack", "xeb")

_CONFIG_FIELDS = {
    "experiment",
    "out_dir",
    "seed",
    "threads",
    "seeds",
    "instances",
    "n",
    "rows",
    "cols",
    "depth",
    "K",
    "gammas",
    "eps_values",
    "eps1_factor",
    "eps_meas",
    "weights",
    "masks_per_weight",
    "gamma",
    "eps",
    "l",
    "eta",
    "fail_prob",
    "eps1",
    "eps2",
    "k_samples",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment's full parameter set; JSON-loadable.

    Unset fields are filled with per-experiment defaults by `resolve`.
    `seeds` lists the per-instance seeds; when omitted it is derived as
    seed, seed+1, ... for `instances` entries.
    """

    experiment: str
    out_dir: str = "out"
    seed: int = 0
    threads: int = 1
    seeds: tuple[int, ...] | None = None
    instances: int | None = None
    n: int | None = None
    rows: int | None = None
    cols: int | None = None
    depth: int | None = None
    K: int | None = None
    gammas: tuple[float, ...] | None = None
    eps_values: tuple[float, ...] | None = None
    eps1_factor: float = 0.1
    eps_meas: float = 0.0
    weights: tuple[int, ...] | None = None
    masks_per_weight: int | None = None
    gamma: float | None = None
    eps: float | None = None
    l: int | None = None
    eta: float | None = None
    fail_prob: float | None = None
    eps1: float | None = None
    eps2: float | None = None
    k_samples: int | None = None

    @classmethod
    def from_json(cls, doc: str) -> "ExperimentConfig":
        try:
            raw = json.loads(doc)
        except json.JSONDecodeError as e:
            raise ValueError(f"config is not valid JSON: {e}") from e
        if not isinstance(raw, dict):
            raise ValueError("config must be a JSON object")
        unknown = set(raw) - _CONFIG_FIELDS
        if unknown:
            raise ValueError(f"unknown config fields: {sorted(unknown)}")
        if "experiment" not in raw:
            raise ValueError("config is missing the 'experiment' field")
        for key in ("seeds", "gammas", "eps_values", "weights"):
            if key in raw and raw[key] is not None:
                raw[key] = tuple(raw[key])
        return cls(**raw)

    def resolve(self) -> "ExperimentConfig":
        """Fill per-experiment defaults and validate the result."""
        if self.experiment not in EXPERIMENTS:
            raise ValueError(
                f"unknown experiment {self.experiment!r}; expected one of {EXPERIMENTS}"
            )
        fills: dict = {}
        if self.experiment == "fig1":
            fills["n"] = self.n or 20
            fills["gammas"] = self.gammas or (0.5, 1.0, 2.0, 4.0)
            fills["instances"] = self.instances or 100
        elif self.experiment == "fig2_fig3":
            fills["rows"] = self.rows or 4
            fills["cols"] = self.cols or 3
            fills["depth"] = self.depth or 40
            fills["K"] = self.K or 2000
            fills["eps_values"] = self.eps_values or EPS_SWEEP_DEFAULT
            fills["instances"] = self.instances or 10
            fills["masks_per_weight"] = self.masks_per_weight or 10
            n = fills["rows"] * fills["cols"]
            fills["weights"] = self.weights or tuple(range(1, n + 1))
        elif self.experiment == "attack":
            fills["n"] = self.n or 12
            fills["gamma"] = 2.0 if self.gamma is None else self.gamma
            fills["eps"] = 0.1 if self.eps is None else self.eps
            fills["l"] = 4 if self.l is None else self.l
            fills["eta"] = 0.25 if self.eta is None else self.eta
            fills["fail_prob"] = 0.01 if self.fail_prob is None else self.fail_prob
        else:
            fills["rows"] = self.rows or 4
            fills["cols"] = self.cols or 3
            fills["depth"] = self.depth or 40
            fills["K"] = self.K or 2000
            fills["eps1"] = 0.0005 if self.eps1 is None else self.eps1
            fills["eps2"] = 0.005 if self.eps2 is None else self.eps2
            fills["k_samples"] = self.k_samples or 100_000
        out = replace(self, **fills)
        if out.instances is not None and out.seeds is None:
            out = replace(
                out, seeds=tuple(out.seed + i for i in range(out.instances))
            )
        if out.seeds is not None and len(out.seeds) == 0:
            raise ValueError("seed list must be non-empty")
        if out.threads < 1:
            raise ValueError("threads must be >= 1")
        if out.K is not None and out.K < 1:
            raise ValueError("K must be >= 1")
        return out


def _ordered_map(fn, items, threads: int) -> list:
    if threads <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def _fmt(x) -> str:
    return repr(float(x))


def _write_csv(path: Path, schema: str, header: str, rows) -> None:
    lines = [f"# schema: {schema}", header]
    lines.extend(",".join(r) for r in rows)
    path.write_text("\n".join(lines) + "\n")


def _write_manifest(path: Path, cfg: ExperimentConfig, outputs, extra=None) -> None:
    doc = {
        "schema": "qchaos.manifest.v1",
        "experiment": cfg.experiment,
        "config": {k: v for k, v in asdict(cfg).items() if v is not None},
        "outputs": [str(p) for p in outputs],
        "created_utc": datetime.now(timezone.utc).isoformat(),
    }
    if extra:
        doc.update(extra)
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _out_dir(cfg: ExperimentConfig) -> Path:
    d = Path(cfg.out_dir)
    d.mkdir(parents=True, exist_ok=True)
    return d


def cmd_fig1(cfg: ExperimentConfig) -> dict:
    """Entropy of sparse IQP output distributions across a gamma sweep.

    Writes fig1.csv with rows (gamma, seed, entropy, pt_entropy_ref).
    """
    cfg = cfg.resolve()
    ref = PTReference.for_qubits(cfg.n).entropy_ref
    tasks = [(g, s) for g in cfg.gammas for s in cfg.seeds]

    def work(task):
        g, s = task
        d = gen_sparse_iqp(SparseIqpSpec(n=cfg.n, gamma=g, seed=s))
        return entropy(iqp_prob_dist(d))

    ents = _ordered_map(work, tasks, cfg.threads)
    rows = [
        (_fmt(g), str(s), _fmt(h), _fmt(ref))
        for (g, s), h in zip(tasks, ents)
    ]
    out = _out_dir(cfg)
    csv_path = out / "fig1.csv"
    _write_csv(csv_path, "qchaos.fig1.v1", "gamma,seed,entropy,pt_entropy_ref", rows)
    man_path = out / "fig1_manifest.json"
    _write_manifest(man_path, cfg, [csv_path])
    return {"csv": str(csv_path), "manifest": str(man_path)}


def _traj_seed(master: int, eps_idx: int, inst_idx: int) -> int:
    # distinct for inst_idx < 1009; composed into (seed, trajectory) streams
    return master * 1_000_003 + eps_idx * 1009 + inst_idx


def cmd_fig2_fig3(cfg: ExperimentConfig) -> dict:
    """Noisy-circuit Fourier spectra across an error-rate sweep.

    For each (rate, instance) pair the circuit's trajectory-averaged
    distribution is transformed and sampled at fixed random masks per
    weight (chosen once per instance, shared across rates).  Writes
    fig2.csv scatter rows (eps, instance, weight, s, coeff, rescaled)
    and fig3.csv rows (eps, weight, std_rescaled, count), where
    rescaled = coeff / 2^{-3n/2}.  The single-qubit rate is
    eps * eps1_factor (default one tenth of the two-qubit rate).
    """
    cfg = cfg.resolve()
    n = cfg.rows * cfg.cols
    scale = 2.0 ** (1.5 * n)
    if math.sqrt(2.0 / cfg.K) > 0.1:
        warnings.warn(
            f"K={cfg.K} gives Fourier estimator noise above 10% of the "
            f"chaotic signal scale (need K >= 200)",
            stacklevel=2,
        )
    circuits = [
        gen_random_universal(
            RandomCircuitSpec(rows=cfg.rows, cols=cfg.cols, depth=cfg.depth, seed=s)
        )
        for s in cfg.seeds
    ]
    mask_sets: list[dict[int, np.ndarray]] = []
    for inst_idx in range(len(cfg.seeds)):
        per_weight = {}
        for w in cfg.weights:
            pool = bits.masks_of_weight(n, w)
            take = min(cfg.masks_per_weight, pool.size)
            rng = np.random.default_rng([cfg.seed, 7, inst_idx, w])
            per_weight[w] = np.sort(rng.choice(pool, size=take, replace=False))
        mask_sets.append(per_weight)

    tasks = [
        (eps_idx, inst_idx)
        for eps_idx in range(len(cfg.eps_values))
        for inst_idx in range(len(cfg.seeds))
    ]

    def work(task):
        eps_idx, inst_idx = task
        eps = cfg.eps_values[eps_idx]
        nm = NoiseModel(
            eps1=eps * cfg.eps1_factor, eps2=eps, eps_meas=cfg.eps_meas
        )
        res = run_trajectories(
            circuits[inst_idx],
            nm,
            cfg.K,
            seed=_traj_seed(cfg.seed, eps_idx, inst_idx),
        )
        return wht(res.avg_dist), res.no_error_fraction

    results = _ordered_map(work, tasks, cfg.threads)

    fig2_rows = []
    pooled: dict[tuple[int, int], list] = {}
    no_error: dict[str, list[float]] = {_fmt(e): [] for e in cfg.eps_values}
    for (eps_idx, inst_idx), (coeffs, nef) in zip(tasks, results):
        eps = cfg.eps_values[eps_idx]
        no_error[_fmt(eps)].append(nef)
        for w in cfg.weights:
            chosen = mask_sets[inst_idx][w]
            vals = coeffs[chosen] * scale
            pooled.setdefault((eps_idx, w), []).extend(vals.tolist())
            for s, coeff, rescaled in zip(chosen, coeffs[chosen], vals):
                fig2_rows.append(
                    (
                        _fmt(eps),
                        str(inst_idx),
                        str(w),
                        str(int(s)),
                        _fmt(coeff),
                        _fmt(rescaled),
                    )
                )

    fig3_rows = []
    for eps_idx in range(len(cfg.eps_values)):
        for w in cfg.weights:
            vals = np.array(pooled[(eps_idx, w)])
            std = float(vals.std(ddof=1)) if vals.size > 1 else 0.0
            fig3_rows.append(
                (_fmt(cfg.eps_values[eps_idx]), str(w), _fmt(std), str(vals.size))
            )

    out = _out_dir(cfg)
    fig2_path = out / "fig2.csv"
    fig3_path = out / "fig3.csv"
    _write_csv(
        fig2_path,
        "qchaos.fig2.v1",
        "eps,instance,weight,s,coeff,rescaled",
        fig2_rows,
    )
    _write_csv(
        fig3_path, "qchaos.fig3.v1", "eps,weight,std_rescaled,count", fig3_rows
    )
    man_path = out / "fig2_fig3_manifest.json"
    _write_manifest(
        man_path,
        cfg,
        [fig2_path, fig3_path],
        extra={"no_error_fraction": no_error},
    )
    return {
        "fig2_csv": str(fig2_path),
        "fig3_csv": str(fig3_path),
        "manifest": str(man_path),
    }


def _attack_metrics(res, exact_spectrum, p_eps, l1_uniform):
    N = p_eps.size
    est_spectrum = np.zeros(N)
    est_spectrum[res.masks] = res.estimates / N
    nonzero = res.masks[res.masks != 0]
    # Pearson correlation is meaningless when the exact components in the
    # window are all (numerically) zero, which happens for sparse diagonal
    # circuits whose low-weight components vanish identically.
    sel = exact_spectrum[nonzero] if nonzero.size else np.zeros(0)
    defined = nonzero.size >= 2 and float(np.abs(sel - sel.mean()).max()) > 1e-12
    corr = (
        spectral_correlation(est_spectrum, exact_spectrum, masks=nonzero)
        if defined
        else None
    )
    l1_q = float(np.abs(res.q_signed - p_eps).sum())
    return {
        "l1_reconstruction": l1_q,
        "l1_uniform": l1_uniform,
        "l1_ratio": l1_q / l1_uniform if l1_uniform > 0 else math.inf,
        "spectral_correlation": corr,
        "n_components": int(res.masks.size),
        "samples_per_component": res.samples_per_component,
        "total_samples": res.total_samples,
    }


def cmd_attack(cfg: ExperimentConfig) -> dict:
    """Low-weight spectral reconstruction attack on a sparse IQP circuit.

    Reconstructs the depolarized output distribution from Fourier
    components of weight <= l, once with exact component values and once
    with Monte-Carlo estimates at the configured (eta, fail_prob)
    budget, and reports l1 distances against the exact noisy
    distribution next to the uniform-guess baseline.
    """
    cfg = cfg.resolve()
    d = gen_sparse_iqp(SparseIqpSpec(n=cfg.n, gamma=cfg.gamma, seed=cfg.seed))
    p = iqp_prob_dist(d)
    exact_spectrum = wht(p)
    p_eps = iwht(decay_spectrum(exact_spectrum, cfg.eps))
    l1_uniform = float(np.abs(p_eps - 1.0 / p_eps.size).sum())

    res_exact = low_weight_reconstruct(
        d, ReconstructionConfig(l=cfg.l, budget=None, eps=cfg.eps)
    )
    budget = EstimatorBudget.for_error(cfg.eta, cfg.fail_prob)
    res_mc = low_weight_reconstruct(
        d,
        ReconstructionConfig(l=cfg.l, budget=budget, eps=cfg.eps),
        seed=cfg.seed,
    )
    report = {
        "schema": "qchaos.attack.v1",
        "n": cfg.n,
        "gamma": cfg.gamma,
        "eps": cfg.eps,
        "l": cfg.l,
        "eta": cfg.eta,
        "fail_prob": cfg.fail_prob,
        "exact": _attack_metrics(res_exact, exact_spectrum, p_eps, l1_uniform),
        "mc": _attack_metrics(res_mc, exact_spectrum, p_eps, l1_uniform),
    }
    out = _out_dir(cfg)
    path = out / "attack_report.json"
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    man_path = out / "attack_manifest.json"
    _write_manifest(man_path, cfg, [path])
    return {"report": str(path), "manifest": str(man_path), "result": report}


def cmd_xeb(cfg: ExperimentConfig) -> dict:
    """Cross-entropy fidelity versus trajectory and per-gate predictions.

    Samples k bitstrings from the trajectory-averaged noisy distribution
    and scores them against the ideal distribution.
    """
    cfg = cfg.resolve()
    c = gen_random_universal(
        RandomCircuitSpec(rows=cfg.rows, cols=cfg.cols, depth=cfg.depth, seed=cfg.seed)
    )
    nm = NoiseModel(eps1=cfg.eps1, eps2=cfg.eps2, eps_meas=cfg.eps_meas)
    p_ideal = probabilities(run(c))
    res = run_trajectories(
        c, nm, cfg.K, seed=cfg.seed * 5669 + 3, threads=cfg.threads
    )
    draws = sample(res.avg_dist, cfg.k_samples, seed=[cfg.seed, 11])
    x = xeb(draws, p_ideal)
    pred = alpha_pred(c, nm)
    report = {
        "schema": "qchaos.xeb.v1",
        "n": c.n,
        "depth": cfg.depth,
        "K": cfg.K,
        "k_samples": cfg.k_samples,
        "eps1": cfg.eps1,
        "eps2": cfg.eps2,
        "eps_meas": cfg.eps_meas,
        "gate_count": c.gate_count,
        "cross_entropy": x.cross_entropy,
        "alpha_hat": x.alpha_hat,
        "std_err": x.std_err,
        "alpha_pred_product": pred.product,
        "alpha_pred_exponential": pred.exponential,
        "no_error_fraction": res.no_error_fraction,
    }
    out = _out_dir(cfg)
    path = out / "xeb_report.json"
    path.write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
    man_path = out / "xeb_manifest.json"
    _write_manifest(man_path, cfg, [path])
    return {"report": str(path), "manifest": str(man_path), "result": report}


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Dispatch a resolved or unresolved config to its command."""
    cfg = cfg.resolve()
    command = {
        "fig1": cmd_fig1,
        "fig2_fig3": cmd_fig2_fig3,
        "attack": cmd_attack,
        "xeb": cmd_xeb,
    }[cfg.experiment]
    return command(cfg)
