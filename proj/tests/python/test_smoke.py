"""Smoke tests for the python module: a thin pass over the main operations,
checking a handful of known values against the C++ suite's references."""
import math

import pytest

import qrsmooth as qs


def test_weights_and_point_probabilities():
    spec = qs.HammingNoiseSpec(3, 3, 1.0)
    w = qs.hamming_weights(spec)
    assert len(w) == 4
    assert abs(sum(w) - 1.0) < 1e-12
    assert abs(w[0] - 0.6439) < 5e-4
    assert abs(qs.hamming_point_probability(spec, 0) - 0.644) < 5e-4
    assert abs(qs.hamming_point_probability(spec, 3) - 0.032) < 5e-4


def test_target_distribution_center_mass():
    spec = qs.HammingNoiseSpec(3, 3, 1.0)
    dist = qs.target_distribution(spec, "011")
    assert abs(dist.prob("011") - 0.644) < 5e-4
    assert abs(sum(dist.probs) - 1.0) < 1e-10
    assert dist.to_csv().startswith("bitstring,probability\n")


def test_prep_distributions():
    spec = qs.HammingNoiseSpec(3, 1, 0.5)
    ham = qs.hamming_prep_distribution(spec, "011")
    assert abs(sum(ham.probs) - 1.0) < 1e-10
    assert ham.prob("011") == max(ham.probs)

    uni = qs.uniform_prep_distribution(3, 0.5, "011")
    assert abs(uni.prob("011") - 0.5625) < 1e-10
    assert abs(uni.prob("000") - 0.0625) < 1e-10

    target = qs.target_distribution(spec, "011")
    mot = qs.mottonen_distribution(target)
    assert max(abs(a - b) for a, b in zip(mot.probs, target.probs)) < 1e-10
    assert qs.mottonen_gate_count(target) == 2 ** 4 - 3


def test_clopper_pearson_and_radius():
    assert qs.clopper_pearson_lower(0, 100, 0.1) == 0.0
    assert abs(qs.clopper_pearson_lower(10, 10, 0.1) - 0.1 ** 0.1) < 1e-12
    deltas = qs.delta_profile(qs.uniform_target_distribution(3, 0.5, "000"))
    assert all(abs(d - 0.5) < 1e-12 for d in deltas)
    assert qs.certified_radius(1.0, deltas) == 0
    assert qs.certified_radius(0.4, deltas) == -1


def test_sampler_matches_center_probability():
    spec = qs.HammingNoiseSpec(3, 3, 1.0)
    draws = qs.sample_perturbation(spec, "011", seed=2024, count=20000)
    freq = sum(1 for d in draws if d == "011") / len(draws)
    assert abs(freq - 0.644) < 0.02


def test_train_and_estimate_roundtrip():
    inputs = ["00", "01", "10", "11"]
    labels = [0, 0, 1, 1]
    params, losses = qs.train_classifier(inputs, labels, 2, 2, lr=0.5, epochs=60, seed=4)
    assert losses[-1] < losses[0]
    assert qs.evaluate_accuracy(params, inputs, labels) == 1.0
    y = qs.predict_soft(params, "10")
    assert 0.0 <= y <= 1.0

    spec = qs.HammingNoiseSpec(2, 1, 0.3)
    est = qs.quadro_smoothed_estimate(spec, "10", params, m=5, shots_per_bit=129,
                                      repetitions=5, seed=11)
    exact = qs.exact_smoothed_value(
        qs.hamming_prep_distribution(spec, "10"),
        lambda x: qs.predict_soft(params, x))
    assert est.p_lower <= exact + 1e-9
    assert abs(est.p_hat - exact) < math.pi * 2.0 ** -4
    assert est.oracle_calls == 5 * 129 * (2 ** 5 - 1)
    assert qs.oracle_call_budget(5) == 2 ** 6 - 1


def test_bow_transform_ramp():
    ramp = list(range(30))
    assert qs.bow_transform(ramp, window=15, word=2, first_half=False) == "0101"


def test_invalid_arguments_raise():
    with pytest.raises(ValueError):
        qs.HammingNoiseSpec(3, 5, 1.0)
    with pytest.raises(ValueError):
        qs.clopper_pearson_lower(5, 3, 0.1)
