#pragma once

#include "qrs/smoothing.hpp"
#include "qrs/statevector.hpp"

#include <vector>

namespace qrs {

struct QaeConfig {
    int m = 4;               // phase bits
    int shots_per_bit = 33;  // majority-vote shots per iteration
    int repetitions = 5;     // median runs, odd
    double alpha = 0.1;
    std::uint64_t seed = 0;

    void validate() const;
};

struct IterationTrace {
    int j = 0;     // controlled-Q power exponent for this round
    int ones = 0;  // shots that measured 1
    int shots = 0;
    int bit = 0;   // majority outcome
};

struct PhaseEstimate {
    double phi_hat = 0.0; // in [0, 1)
    double a_hat = 0.0;   // sin^2(pi * phi_hat)
    double a_lower = 0.0;
    long long oracle_calls = 0;     // applications of Q
    long long classifier_calls = 0; // 2 per Q (A and A-dagger each run the classifier)
    std::vector<IterationTrace> iterations;
};

// State preparation A plus Grover operator Q over prep's register extended by
// one oracle-workspace qubit. A runs prep, puts the workspace into |->, then
// runs the classifier; Q realizes -A S0 Adag S_chi with S_chi a CNOT from the
// output qubit onto the |-> workspace (phase kickback) and S0 an X-conjugated
// multi-controlled Z on the all-zeros state. The leading minus sign is kept
// as an RZ(2pi) gate so that controlled-Q kicks the correct phase and the
// eigenphases of Q are exactly +-2theta with a = sin^2(theta).
struct GroverOperator {
    Circuit a;
    Circuit q;
    int num_qubits = 0;
    int output_qubit = 0;
    int workspace_qubit = 0;
};

GroverOperator build_grover_operator(const Circuit& prep, const Circuit& classifier,
                                     int output_qubit);

// Single-ancilla iterative phase estimation with per-bit majority vote.
// The ancilla is appended after q's register.
PhaseEstimate iqpe_phase(const Circuit& q, const Circuit& a, int m, int shots_per_bit,
                         std::uint64_t seed);

double amplitude_from_phase(double phi_hat);
double folded_phase(double phi_hat); // into [0, 1/2]

// Median-of-repetitions amplitude estimate with a one-grid-step phase
// back-off for the lower bound.
SmoothedEstimate quadro_estimate(const Circuit& prep, const Circuit& classifier,
                                 int output_qubit, const QaeConfig& config,
                                 std::vector<PhaseEstimate>* runs = nullptr);

// Paper-quoted oracle budget for m phase bits.
long long oracle_call_budget(int m);
// Q applications actually consumed by one IQPE run.
long long iqpe_oracle_calls(int m, int shots_per_bit);

} // namespace qrs
