#include "qrs/smoothing.hpp"

#include <boost/math/special_functions/beta.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qrs {

Bits sample_perturbation(const HammingNoiseSpec& spec, const Bits& x, Rng& rng) {
    spec.validate();
    if (static_cast<int>(x.size()) != spec.n) {
        throw std::invalid_argument("sample_perturbation: |x| must equal n");
    }
    const std::vector<double> w = hamming_weights(spec);
    const double u = rng.u01();
    int dist = spec.k;
    double acc = 0.0;
    for (int i = 0; i <= spec.k; ++i) {
        acc += w[i];
        if (u < acc) {
            dist = i;
            break;
        }
    }
    // uniform subset of `dist` positions: partial Fisher-Yates
    std::vector<int> pos(spec.n);
    std::iota(pos.begin(), pos.end(), 0);
    Bits out = x;
    for (int i = 0; i < dist; ++i) {
        const auto j = i + static_cast<int>(rng.bounded(spec.n - i));
        std::swap(pos[i], pos[j]);
        out[pos[i]] ^= 1;
    }
    return out;
}

Bits sample_uniform_perturbation(int n, double sigma, const Bits& x, Rng& rng) {
    if (static_cast<int>(x.size()) != n) {
        throw std::invalid_argument("sample_uniform_perturbation: |x| must equal n");
    }
    const double c = std::cos(sigma * 3.14159265358979323846 / 2.0);
    if (rng.u01() < c * c) return x;
    Bits out(x.size());
    for (auto& b : out) b = static_cast<std::uint8_t>(rng.bounded(2));
    return out;
}

double clopper_pearson_lower(long long successes, long long trials, double alpha) {
    if (trials < 1 || successes < 0 || successes > trials) {
        throw std::invalid_argument("clopper_pearson_lower: need 0 <= successes <= trials");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("clopper_pearson_lower: alpha must be in (0, 1)");
    }
    if (successes == 0) return 0.0;
    if (successes == trials) {
        return std::pow(alpha, 1.0 / static_cast<double>(trials));
    }
    // alpha-quantile of Beta(successes, trials - successes + 1)
    return boost::math::ibeta_inv(static_cast<double>(successes),
                                  static_cast<double>(trials - successes + 1), alpha);
}

double delta_for_mask(const DiscreteDistribution& dist, std::uint64_t mask) {
    double tv = 0.0;
    for (std::uint64_t y = 0; y < dist.probs.size(); ++y) {
        tv += std::abs(dist.probs[y] - dist.probs[y ^ mask]);
    }
    return 0.5 * tv;
}

namespace {

std::uint64_t canonical_mask(int n, int r) {
    if (r < 1 || r > n) throw std::invalid_argument("delta_at_radius: need 1 <= r <= n");
    // first r qubits, i.e. the top r index bits
    return ((std::uint64_t{1} << r) - 1) << (n - r);
}

} // namespace

double delta_at_radius(const HammingNoiseSpec& spec, int r) {
    spec.validate();
    if (spec.n > 20) throw std::invalid_argument("delta_at_radius: n > 20 enumeration cap");
    const Bits center(spec.n, 0);
    const DiscreteDistribution dist = target_distribution(spec, center);
    return delta_for_mask(dist, canonical_mask(spec.n, r));
}

double delta_at_radius(const DiscreteDistribution& dist, int r) {
    return delta_for_mask(dist, canonical_mask(dist.n, r));
}

std::vector<double> delta_profile(const HammingNoiseSpec& spec) {
    const Bits center(spec.n, 0);
    const DiscreteDistribution dist = target_distribution(spec, center);
    return delta_profile(dist);
}

std::vector<double> delta_profile(const DiscreteDistribution& dist) {
    std::vector<double> deltas(dist.n);
    for (int r = 1; r <= dist.n; ++r) {
        deltas[r - 1] = delta_at_radius(dist, r);
    }
    return deltas;
}

int certified_radius(double p_lower, const std::vector<double>& deltas) {
    if (!(p_lower > 0.5)) return -1;
    int radius = 0;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (p_lower - deltas[i] > 0.5) {
            radius = static_cast<int>(i + 1);
        } else {
            break; // Delta is non-decreasing; certification must hold at every r' <= r
        }
    }
    return radius;
}

double exact_smoothed_value(const DiscreteDistribution& dist,
                            const std::function<double(const Bits&)>& soft_classifier) {
    if (dist.n > 20) throw std::invalid_argument("exact_smoothed_value: n > 20 cap");
    double v = 0.0;
    for (std::uint64_t y = 0; y < dist.probs.size(); ++y) {
        if (dist.probs[y] > 0.0) {
            v += dist.probs[y] * soft_classifier(index_to_bits(y, dist.n));
        }
    }
    return v;
}

} // namespace qrs
