#include "qrs/stateprep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace qrs {

namespace {
constexpr int kEnumerationCap = 20;
constexpr double kPi = 3.14159265358979323846;
} // namespace

void HammingNoiseSpec::validate() const {
    if (n < 1) throw std::invalid_argument("HammingNoiseSpec: n must be >= 1");
    if (k < 0 || k > n) throw std::invalid_argument("HammingNoiseSpec: need 0 <= k <= n");
    if (!(sigma >= 0.0)) throw std::invalid_argument("HammingNoiseSpec: sigma must be >= 0");
}

double DiscreteDistribution::prob(const Bits& x) const {
    if (static_cast<int>(x.size()) != n) {
        throw std::invalid_argument("DiscreteDistribution::prob: length mismatch");
    }
    return probs[bits_to_index(x)];
}

double DiscreteDistribution::total() const {
    double t = 0.0;
    for (double p : probs) t += p;
    return t;
}

std::uint64_t bits_to_index(const Bits& x) {
    std::uint64_t idx = 0;
    for (auto b : x) idx = (idx << 1) | (b ? 1u : 0u);
    return idx;
}

Bits index_to_bits(std::uint64_t index, int n) {
    Bits b(n);
    for (int j = 0; j < n; ++j) {
        b[j] = static_cast<std::uint8_t>((index >> (n - 1 - j)) & 1ULL);
    }
    return b;
}

double binomial_coefficient(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(c);
}

std::vector<double> hamming_weights(const HammingNoiseSpec& spec) {
    spec.validate();
    if (!(spec.sigma > 0.0)) {
        throw std::invalid_argument("hamming_weights: sigma must be > 0");
    }
    std::vector<double> w(spec.k + 1);
    double z = 0.0;
    for (int i = 0; i <= spec.k; ++i) {
        w[i] = std::exp(-static_cast<double>(i) / spec.sigma);
        z += w[i];
    }
    for (double& v : w) v /= z;
    return w;
}

double hamming_point_probability(const HammingNoiseSpec& spec, int distance) {
    if (distance < 0 || distance > spec.k) {
        throw std::out_of_range("hamming_point_probability: need 0 <= distance <= k");
    }
    return hamming_weights(spec)[distance] / binomial_coefficient(spec.n, distance);
}

DiscreteDistribution target_distribution(const HammingNoiseSpec& spec, const Bits& x) {
    spec.validate();
    if (static_cast<int>(x.size()) != spec.n) {
        throw std::invalid_argument("target_distribution: |x| must equal n");
    }
    if (spec.n > kEnumerationCap) {
        throw std::invalid_argument("target_distribution: n > 20 exceeds enumeration cap");
    }
    const std::vector<double> w = hamming_weights(spec);
    std::vector<double> point(spec.k + 1);
    for (int i = 0; i <= spec.k; ++i) {
        point[i] = w[i] / binomial_coefficient(spec.n, i);
    }
    DiscreteDistribution dist{spec.n, std::vector<double>(std::uint64_t{1} << spec.n, 0.0)};
    const std::uint64_t cx = bits_to_index(x);
    for (std::uint64_t y = 0; y < dist.probs.size(); ++y) {
        const int d = std::popcount(y ^ cx);
        if (d <= spec.k) dist.probs[y] = point[d];
    }
    return dist;
}

namespace {

// Multiplexed RY on `target` with controls 0..target-1, given one angle per
// control pattern, emitted in Gray-code form: pairs of (RY, CNOT) whose net
// effect equals the uniformly controlled rotation.
void emit_multiplexed_ry(Circuit& c, int target, const std::vector<double>& theta) {
    const std::size_t m = theta.size();
    if (m == 1) {
        c.add(Gate::ry(target, theta[0]));
        return;
    }
    std::vector<double> phi(m, 0.0);
    for (std::size_t t = 0; t < m; ++t) {
        const std::uint64_t gray = t ^ (t >> 1);
        double acc = 0.0;
        for (std::size_t p = 0; p < m; ++p) {
            acc += (std::popcount(gray & p) & 1) ? -theta[p] : theta[p];
        }
        phi[t] = acc / static_cast<double>(m);
    }
    const int bits = target; // number of control qubits
    for (std::size_t t = 0; t < m; ++t) {
        c.add(Gate::ry(target, phi[t]));
        // control whose pattern bit flips between gray(t) and gray(t+1);
        // pattern bit b corresponds to control qubit target-1-b
        const std::uint64_t next = (t + 1 == m) ? 0 : (t + 1);
        const std::uint64_t diff = (t ^ (t >> 1)) ^ (next ^ (next >> 1));
        const int b = std::countr_zero(diff == 0 ? 1ULL : diff);
        c.add(Gate::cnot(std::max(0, bits - 1 - b), target));
    }
}

} // namespace

Circuit mottonen_circuit(const DiscreteDistribution& target) {
    const int n = target.n;
    if (n < 1) throw std::invalid_argument("mottonen_circuit: n must be >= 1");
    if (std::abs(target.total() - 1.0) > 1e-8) {
        throw std::invalid_argument("mottonen_circuit: target is not normalized");
    }
    const std::uint64_t dim = std::uint64_t{1} << n;

    // subtree[j][c]: probability mass of prefix c of length j
    std::vector<std::vector<double>> mass(n + 1);
    mass[n].assign(target.probs.begin(), target.probs.end());
    for (int j = n - 1; j >= 0; --j) {
        mass[j].assign(std::uint64_t{1} << j, 0.0);
        for (std::uint64_t c = 0; c < mass[j].size(); ++c) {
            mass[j][c] = mass[j + 1][2 * c] + mass[j + 1][2 * c + 1];
        }
    }

    Circuit circuit(n);
    for (int j = 0; j < n; ++j) {
        std::vector<double> theta(std::uint64_t{1} << j);
        for (std::uint64_t c = 0; c < theta.size(); ++c) {
            const double w0 = mass[j + 1][2 * c];
            const double w1 = mass[j + 1][2 * c + 1];
            theta[c] = (w0 + w1 > 0.0) ? 2.0 * std::atan2(std::sqrt(w1), std::sqrt(w0)) : 0.0;
        }
        emit_multiplexed_ry(circuit, j, theta);
    }
    (void)dim;
    return circuit;
}

double hamming_prep_flip_probability(double sigma) {
    const double s = std::sin(sigma * kPi / 2.0);
    return 0.5 * s * s;
}

Circuit hamming_prep_circuit(const HammingNoiseSpec& spec, const Bits& x) {
    spec.validate();
    if (static_cast<int>(x.size()) != spec.n) {
        throw std::invalid_argument("hamming_prep_circuit: |x| must equal n");
    }
    if (spec.sigma < 0.0 || spec.sigma > 1.0) {
        throw std::invalid_argument("hamming_prep_circuit: sigma must be in [0, 1]");
    }
    const int n = spec.n;
    const double q = hamming_prep_flip_probability(spec.sigma);
    const double theta = 2.0 * std::asin(std::min(1.0, std::sqrt(q)));

    Circuit c(2 * n);
    for (int i = 0; i < n; ++i) {
        if (x[i]) c.add(Gate::x(i));
    }
    for (int i = 0; i < n; ++i) {
        c.add(Gate::ry(n + i, theta));
    }
    for (int i = 0; i < n; ++i) {
        c.add(Gate::cnot(n + i, i));
    }
    for (int i = 0; i < n; ++i) {
        c.add(Gate::x(n + i));
    }
    return c;
}

Circuit uniform_prep_circuit(int n, double sigma, const Bits& x) {
    if (n < 1) throw std::invalid_argument("uniform_prep_circuit: n must be >= 1");
    if (static_cast<int>(x.size()) != n) {
        throw std::invalid_argument("uniform_prep_circuit: |x| must equal n");
    }
    if (sigma < 0.0 || sigma > 1.0) {
        throw std::invalid_argument("uniform_prep_circuit: sigma must be in [0, 1]");
    }
    Circuit c(n + 1);
    const int ancilla = n;
    for (int i = 0; i < n; ++i) {
        if (x[i]) c.add(Gate::x(i));
    }
    c.add(Gate::ry(ancilla, sigma * kPi));
    for (int i = 0; i < n; ++i) {
        c.add(Gate::h(i).with_control(ancilla));
    }
    return c;
}

DiscreteDistribution uniform_target_distribution(int n, double sigma, const Bits& x) {
    if (n < 1 || n > kEnumerationCap) {
        throw std::invalid_argument("uniform_target_distribution: need 1 <= n <= 20");
    }
    if (static_cast<int>(x.size()) != n) {
        throw std::invalid_argument("uniform_target_distribution: |x| must equal n");
    }
    if (sigma < 0.0 || sigma > 1.0) {
        throw std::invalid_argument("uniform_target_distribution: sigma must be in [0, 1]");
    }
    const double s = std::sin(sigma * kPi / 2.0);
    const double c = std::cos(sigma * kPi / 2.0);
    const double background = s * s / std::pow(2.0, n);
    DiscreteDistribution dist{n, std::vector<double>(std::uint64_t{1} << n, background)};
    dist.probs[bits_to_index(x)] += c * c;
    return dist;
}

DiscreteDistribution induced_distribution(const Circuit& circuit,
                                          const std::vector<int>& data_qubits) {
    const StateVector state = run_from_zero(circuit);
    DiscreteDistribution dist;
    dist.n = static_cast<int>(data_qubits.size());
    dist.probs = marginal_probabilities(state, data_qubits);
    return dist;
}

std::string distribution_to_csv(const DiscreteDistribution& dist) {
    std::string out = "bitstring,probability\n";
    for (std::uint64_t i = 0; i < dist.probs.size(); ++i) {
        if (dist.probs[i] > 0.0) {
            out += fmt::format("{},{:.17g}\n", bits_to_string(index_to_bits(i, dist.n)),
                               dist.probs[i]);
        }
    }
    return out;
}

void write_distribution_csv(const DiscreteDistribution& dist, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << distribution_to_csv(dist);
}

} // namespace qrs
