"""Certified robustness toolkit: Hamming-noise randomized smoothing on an
exact statevector simulator, with amplitude-estimated smoothed probabilities.

The heavy lifting lives in the compiled extension; see the project README for
the CLI that drives full experiments.
"""

from qrsmooth._core import (
    ClassifierParams,
    DiscreteDistribution,
    HammingNoiseSpec,
    SmoothedEstimate,
    bow_transform,
    certified_radius,
    clopper_pearson_lower,
    delta_profile,
    evaluate_accuracy,
    exact_smoothed_value,
    hamming_point_probability,
    hamming_prep_distribution,
    hamming_weights,
    load_params_csv,
    mottonen_distribution,
    mottonen_gate_count,
    oracle_call_budget,
    predict_soft,
    quadro_smoothed_estimate,
    sample_perturbation,
    target_distribution,
    train_classifier,
    uniform_prep_distribution,
    uniform_target_distribution,
)

__all__ = [
    "ClassifierParams",
    "DiscreteDistribution",
    "HammingNoiseSpec",
    "SmoothedEstimate",
    "bow_transform",
    "certified_radius",
    "clopper_pearson_lower",
    "delta_profile",
    "evaluate_accuracy",
    "exact_smoothed_value",
    "hamming_point_probability",
    "hamming_prep_distribution",
    "hamming_weights",
    "load_params_csv",
    "mottonen_distribution",
    "mottonen_gate_count",
    "oracle_call_budget",
    "predict_soft",
    "quadro_smoothed_estimate",
    "sample_perturbation",
    "target_distribution",
    "train_classifier",
    "uniform_prep_distribution",
    "uniform_target_distribution",
]

__version__ = "0.1.0"
