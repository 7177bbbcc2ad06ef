#include "qrs/quadro.hpp"

#include "qrs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrs {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 6.28318530717958647692;
} // namespace

void QaeConfig::validate() const {
    if (m < 1) throw std::invalid_argument("QaeConfig: m must be >= 1");
    if (shots_per_bit < 1) throw std::invalid_argument("QaeConfig: shots_per_bit must be >= 1");
    if (repetitions < 1 || repetitions % 2 == 0) {
        throw std::invalid_argument("QaeConfig: repetitions must be odd and >= 1");
    }
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw std::invalid_argument("QaeConfig: alpha must be in (0, 1)");
    }
}

GroverOperator build_grover_operator(const Circuit& prep, const Circuit& classifier,
                                     int output_qubit) {
    if (classifier.num_qubits > prep.num_qubits) {
        throw std::invalid_argument(
            "build_grover_operator: classifier register exceeds prep register");
    }
    if (output_qubit < 0 || output_qubit >= prep.num_qubits) {
        throw std::invalid_argument("build_grover_operator: output qubit out of range");
    }
    const int n = prep.num_qubits;
    const int workspace = n;
    const int total = n + 1;

    GroverOperator g;
    g.num_qubits = total;
    g.output_qubit = output_qubit;
    g.workspace_qubit = workspace;

    Circuit a(total);
    for (const Gate& gate : prep.gates) a.add(gate);
    a.add(Gate::x(workspace));
    a.add(Gate::h(workspace)); // workspace |-> for phase kickback
    for (const Gate& gate : classifier.gates) a.add(gate);
    g.a = a;

    Circuit q(total);
    // S_chi: phase-flip the output_qubit = 1 subspace via the |-> workspace
    q.add(Gate::cnot(output_qubit, workspace));
    // A-dagger
    const Circuit a_inv = inverse_circuit(a);
    for (const Gate& gate : a_inv.gates) q.add(gate);
    // S0: phase flip of |0...0> as an X-conjugated multi-controlled Z
    for (int i = 0; i < total; ++i) q.add(Gate::x(i));
    {
        std::vector<int> controls(total - 1);
        for (int i = 0; i < total - 1; ++i) controls[i] = i;
        q.add(Gate::mcz(controls, total - 1));
    }
    for (int i = 0; i < total; ++i) q.add(Gate::x(i));
    // A
    for (const Gate& gate : a.gates) q.add(gate);
    // global -1 so that Q = -A S0 Adag S_chi; observable once Q is controlled
    q.add(Gate::rz(0, kTwoPi));
    g.q = q;
    return g;
}

PhaseEstimate iqpe_phase(const Circuit& q, const Circuit& a, int m, int shots_per_bit,
                         std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("iqpe_phase: m must be >= 1");
    if (shots_per_bit < 1) throw std::invalid_argument("iqpe_phase: shots_per_bit >= 1");
    if (a.num_qubits > q.num_qubits) {
        throw std::invalid_argument("iqpe_phase: A register exceeds Q register");
    }
    const int ancilla = q.num_qubits;
    Circuit a_padded(ancilla + 1);
    a_padded.gates = a.gates;
    const CompiledCircuit prep(a_padded);
    const CompiledCircuit cq(controlled_wrap(q, ancilla));
    Rng rng(seed);

    std::vector<int> bits(m + 1, 0); // bits[l] = c_l of phi = 0.c_1...c_m
    std::vector<IterationTrace> trace;
    trace.reserve(m);

    for (int s = 0; s < m; ++s) {
        const int j = m - 1 - s;
        StateVector state(ancilla + 1);
        prep.run_inplace(state);
        apply_gate_inplace(state, Gate::h(ancilla));
        const std::uint64_t reps = std::uint64_t{1} << j;
        for (std::uint64_t r = 0; r < reps; ++r) {
            cq.run_inplace(state);
        }
        // subtract the already measured lower bits of 2^j * phi
        double sigma = 0.0;
        for (int l = j + 2; l <= m; ++l) {
            sigma += bits[l] * std::pow(2.0, j - l);
        }
        if (sigma != 0.0) {
            apply_gate_inplace(state, Gate::rz(ancilla, -kTwoPi * sigma));
        }
        apply_gate_inplace(state, Gate::h(ancilla));

        const std::vector<double> marg = marginal_probabilities(state, {ancilla});
        const double p1 = marg[1];
        int ones = 0;
        for (int shot = 0; shot < shots_per_bit; ++shot) {
            ones += rng.bernoulli(p1);
        }
        const int bit = (2 * ones > shots_per_bit) ? 1 : 0;
        bits[j + 1] = bit;
        trace.push_back({j, ones, shots_per_bit, bit});
    }

    PhaseEstimate est;
    for (int l = 1; l <= m; ++l) {
        est.phi_hat += bits[l] * std::pow(2.0, -l);
    }
    est.a_hat = amplitude_from_phase(est.phi_hat);
    const double grid = std::pow(2.0, -m);
    est.a_lower = amplitude_from_phase(std::max(0.0, folded_phase(est.phi_hat) - grid));
    est.oracle_calls = iqpe_oracle_calls(m, shots_per_bit);
    est.classifier_calls = 2 * est.oracle_calls;
    est.iterations = std::move(trace);
    return est;
}

double amplitude_from_phase(double phi_hat) {
    const double s = std::sin(kPi * phi_hat);
    return s * s;
}

double folded_phase(double phi_hat) {
    const double p = phi_hat - std::floor(phi_hat);
    return std::min(p, 1.0 - p);
}

SmoothedEstimate quadro_estimate(const Circuit& prep, const Circuit& classifier,
                                 int output_qubit, const QaeConfig& config,
                                 std::vector<PhaseEstimate>* runs) {
    config.validate();
    const GroverOperator g = build_grover_operator(prep, classifier, output_qubit);

    std::vector<PhaseEstimate> estimates;
    estimates.reserve(config.repetitions);
    for (int r = 0; r < config.repetitions; ++r) {
        estimates.push_back(iqpe_phase(g.q, g.a, config.m, config.shots_per_bit,
                                       derive_seed(config.seed, static_cast<std::uint64_t>(r))));
    }

    std::vector<double> folded(config.repetitions);
    for (int r = 0; r < config.repetitions; ++r) {
        folded[r] = folded_phase(estimates[r].phi_hat);
    }
    std::nth_element(folded.begin(), folded.begin() + config.repetitions / 2, folded.end());
    const double phi_med = folded[config.repetitions / 2];
    const double grid = std::pow(2.0, -config.m);

    SmoothedEstimate est;
    est.p_hat = amplitude_from_phase(phi_med);
    est.p_lower = amplitude_from_phase(std::max(0.0, phi_med - grid));
    est.alpha = config.alpha;
    est.trials = static_cast<long long>(config.repetitions) * config.m * config.shots_per_bit;
    est.oracle_calls =
        static_cast<long long>(config.repetitions) * iqpe_oracle_calls(config.m, config.shots_per_bit);
    if (runs != nullptr) *runs = std::move(estimates);
    return est;
}

long long oracle_call_budget(int m) {
    if (m < 1) throw std::invalid_argument("oracle_call_budget: m must be >= 1");
    return (1LL << (m + 1)) - 1;
}

long long iqpe_oracle_calls(int m, int shots_per_bit) {
    return static_cast<long long>(shots_per_bit) * ((1LL << m) - 1);
}

} // namespace qrs
