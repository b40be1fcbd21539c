"""Spectral-analysis laboratory for noisy chaotic quantum circuits.

The package simulates small random quantum circuits exactly, applies
depolarizing noise as Pauli trajectories, studies output distributions
through their Walsh-Hadamard spectra, and drives the experiments that
produce the repository's figures.
"""

from .circuits import (
    DiagonalCircuit,
    RandomCircuitSpec,
    SparseIqpSpec,
    eval_f,
    eval_f_batch,
    f_table,
    gen_random_universal,
    gen_sparse_iqp,
    iqp_prob_dist,
)
from .core import (
    Circuit,
    Gate,
    apply_gate,
    check_prob_dist,
    probabilities,
    run,
    run_states,
    sample,
    zero_state,
)
from .experiments import (
    ExperimentConfig,
    cmd_attack,
    cmd_fig1,
    cmd_fig2_fig3,
    cmd_xeb,
    run_experiment,
)
from .fourier import (
    EstimatorBudget,
    ReconstructionConfig,
    ReconstructionResult,
    choose_l,
    decay_spectrum,
    exact_component_convolution,
    fwht,
    hoeffding_samples,
    iwht,
    low_weight_reconstruct,
    mc_estimate_component,
    spectral_correlation,
    spectrum_to_csv,
    wht,
)
from .noise import (
    AlphaPrediction,
    NoiseModel,
    TrajectoryResult,
    alpha_pred,
    ansatz_dist,
    premeasurement_depolarize,
    run_trajectories,
)
from .stats import (
    EULER_GAMMA,
    BipartitionReport,
    BipartitionSum,
    GaussianFitReport,
    PTReference,
    XebResult,
    bipartition_sum,
    bipartition_sum_test,
    check_report,
    collision_beta,
    entropy,
    fourier_gaussian_test,
    sample_haar_probdist,
    xeb,
)

__version__ = "0.1.0"

__all__ = [
    "AlphaPrediction",
    "BipartitionReport",
    "BipartitionSum",
    "Circuit",
    "DiagonalCircuit",
    "EULER_GAMMA",
    "EstimatorBudget",
    "ExperimentConfig",
    "Gate",
    "GaussianFitReport",
    "NoiseModel",
    "PTReference",
    "RandomCircuitSpec",
    "ReconstructionConfig",
    "ReconstructionResult",
    "SparseIqpSpec",
    "TrajectoryResult",
    "XebResult",
    "alpha_pred",
    "ansatz_dist",
    "apply_gate",
    "bipartition_sum",
    "bipartition_sum_test",
    "check_prob_dist",
    "check_report",
    "choose_l",
    "cmd_attack",
    "cmd_fig1",
    "cmd_fig2_fig3",
    "cmd_xeb",
    "collision_beta",
    "decay_spectrum",
    "entropy",
    "eval_f",
    "eval_f_batch",
    "exact_component_convolution",
    "f_table",
    "fourier_gaussian_test",
    "fwht",
    "gen_random_universal",
    "gen_sparse_iqp",
    "hoeffding_samples",
    "iqp_prob_dist",
    "iwht",
    "low_weight_reconstruct",
    "mc_estimate_component",
    "premeasurement_depolarize",
    "probabilities",
    "run",
    "run_experiment",
    "run_states",
    "run_trajectories",
    "sample",
    "sample_haar_probdist",
    "spectral_correlation",
    "spectrum_to_csv",
    "wht",
    "xeb",
    "zero_state",
]
