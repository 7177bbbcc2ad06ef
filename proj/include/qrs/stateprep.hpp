#pragma once

#include "qrs/statevector.hpp"

#include <string>
#include <vector>

namespace qrs {

// Smoothing distribution parameters: bitstrings at Hamming distance i <= k
// from the center share weight w(i) = exp(-i/sigma) / sum_j exp(-j/sigma).
// The circuit preparation routes additionally require sigma in [0, 1].
struct HammingNoiseSpec {
    int n = 0;
    int k = 0;
    double sigma = 1.0;

    void validate() const;
};

struct DiscreteDistribution {
    int n = 0;
    std::vector<double> probs; // 2^n entries, index = big-endian bitstring

    double prob(const Bits& x) const;
    double total() const;
};

std::uint64_t bits_to_index(const Bits& x);
Bits index_to_bits(std::uint64_t index, int n);

double binomial_coefficient(int n, int k);

// w(i) for i = 0..k; strictly decreasing, sums to 1.
std::vector<double> hamming_weights(const HammingNoiseSpec& spec);

// per-state probability p(i) = w(i) / C(n, i)
double hamming_point_probability(const HammingNoiseSpec& spec, int distance);

DiscreteDistribution target_distribution(const HammingNoiseSpec& spec, const Bits& x);

// Exact amplitude loading of sqrt(prob) via a cascade of multiplexed RY
// rotations in Gray-code form; 2^{n+1} - 3 elementary gates.
Circuit mottonen_circuit(const DiscreteDistribution& target);

// Shallow 2n-qubit preparation centered at x (data qubits 0..n-1, flag
// ancillas n..2n-1). Each ancilla is rotated so that its |1> amplitude
// carries flip probability q = sin^2(sigma*pi/2)/2, then a CNOT copies the
// flip onto the data qubit; the data register stays basis-correlated with
// the ancillas, so the induced marginal is an exact product of independent
// bit flips around x. A closing X layer inverts the ancillas so |1> marks
// "kept". Approximates target_distribution; it does not reproduce it.
Circuit hamming_prep_circuit(const HammingNoiseSpec& spec, const Bits& x);

// n+1 qubits: RY(sigma*pi) on the single ancilla, controlled-H fan-out.
// Data marginal is exactly cos^2(sigma*pi/2) + sin^2(sigma*pi/2)/2^n at x
// and sin^2(sigma*pi/2)/2^n elsewhere.
Circuit uniform_prep_circuit(int n, double sigma, const Bits& x);

// per-bit flip probability of the hamming prep marginal
double hamming_prep_flip_probability(double sigma);

// Analytic law of the uniform preparation (the circuit reproduces it exactly).
DiscreteDistribution uniform_target_distribution(int n, double sigma, const Bits& x);

DiscreteDistribution induced_distribution(const Circuit& circuit,
                                          const std::vector<int>& data_qubits);

std::string distribution_to_csv(const DiscreteDistribution& dist);
void write_distribution_csv(const DiscreteDistribution& dist, const std::string& path);

} // namespace qrs
