#pragma once

#include "qrs/rng.hpp"
#include "qrs/stateprep.hpp"

#include <functional>
#include <vector>

namespace qrs {

struct SmoothedEstimate {
    double p_hat = 0.0;
    double p_lower = 0.0;
    double alpha = 0.0;
    long long trials = 0;
    long long oracle_calls = 0;
};

// Draws distance i with probability w(i), then flips a uniform i-subset of
// positions; the marginal law equals target_distribution(spec, x).
Bits sample_perturbation(const HammingNoiseSpec& spec, const Bits& x, Rng& rng);

// Stay at x with probability cos^2(sigma*pi/2), otherwise draw uniformly from
// all 2^n strings; matches uniform_target_distribution(n, sigma, x).
Bits sample_uniform_perturbation(int n, double sigma, const Bits& x, Rng& rng);

// One-sided exact binomial lower confidence bound at level alpha.
double clopper_pearson_lower(long long successes, long long trials, double alpha);

// Total-variation distance between the exact target distribution centered at
// x and the one centered at an x~ differing in r canonical positions. By the
// permutation symmetry of the law this is independent of x and of which
// positions differ.
double delta_at_radius(const HammingNoiseSpec& spec, int r);

// Same quantity for an arbitrary center-x distribution table, assuming the
// family is XOR-translation covariant (true for every preparation here;
// covered by the position-independence property test).
double delta_at_radius(const DiscreteDistribution& dist, int r);

std::vector<double> delta_profile(const HammingNoiseSpec& spec);
std::vector<double> delta_profile(const DiscreteDistribution& dist);

// TV distance against the distribution re-centered by the given flip mask
// (mask in amplitude-index space).
double delta_for_mask(const DiscreteDistribution& dist, std::uint64_t mask);

// Largest r >= 0 with p_lower - delta[r] > 1/2 (delta[r-1] convention:
// deltas[i] is Delta(i+1)); -1 encodes abstention (p_lower <= 1/2).
int certified_radius(double p_lower, const std::vector<double>& deltas);

// sum over the table of prob * soft_classifier(bits)
double exact_smoothed_value(const DiscreteDistribution& dist,
                            const std::function<double(const Bits&)>& soft_classifier);

} // namespace qrs
