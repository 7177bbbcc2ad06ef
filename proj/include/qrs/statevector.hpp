#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace qrs {

using Complex = std::complex<double>;
using Bits = std::vector<std::uint8_t>;

Bits bits_from_string(const std::string& s);
std::string bits_to_string(const Bits& b);
int hamming_distance(const Bits& a, const Bits& b);

// Dense state over `num_qubits` qubits. Qubit 0 is the most significant bit
// of the amplitude index (big-endian), i.e. basis state |b0 b1 ... b_{n-1}>
// lives at index (b0 << (n-1)) | ... | b_{n-1}.
class StateVector {
  public:
    explicit StateVector(int num_qubits);
    static StateVector basis(int num_qubits, const Bits& bits);

    int num_qubits() const { return num_qubits_; }
    std::uint64_t dim() const { return std::uint64_t{1} << num_qubits_; }
    const std::vector<Complex>& amplitudes() const { return amps_; }
    std::vector<Complex>& amplitudes() { return amps_; }
    Complex amplitude(std::uint64_t index) const { return amps_[index]; }

    // index bit mask of qubit q
    std::uint64_t qubit_mask(int q) const {
        return std::uint64_t{1} << (num_qubits_ - 1 - q);
    }

    double norm() const;

  private:
    int num_qubits_;
    std::vector<Complex> amps_;
};

enum class GateKind {
    X,
    H,
    RY,
    RZ,
    Rot,
    CNOT,
    CZ,
    MultiControlledX,
    MultiControlledZ,
    ControlledRY,
};

// A gate is a base operation plus an optional list of controls. Each control
// carries a polarity bit: 1 fires on |1>, 0 fires on |0> (negative control).
struct Gate {
    GateKind kind;
    std::vector<int> targets;
    std::vector<int> controls;
    std::vector<std::uint8_t> control_polarity;
    double params[3] = {0.0, 0.0, 0.0};

    static Gate x(int target);
    static Gate h(int target);
    static Gate ry(int target, double theta);
    static Gate rz(int target, double theta);
    static Gate rot(int target, double alpha, double beta, double gamma);
    static Gate cnot(int control, int target);
    static Gate cz(int control, int target);
    static Gate cry(int control, int target, double theta);
    static Gate z(int target);
    static Gate mcx(std::vector<int> controls, std::vector<int> targets,
                    std::vector<std::uint8_t> polarity = {});
    static Gate mcz(std::vector<int> controls, int target,
                    std::vector<std::uint8_t> polarity = {});

    Gate with_control(int control, std::uint8_t polarity = 1) const;
    Gate adjoint() const;

    // every qubit the gate touches (targets + controls)
    std::vector<int> footprint() const;
};

struct Circuit {
    int num_qubits = 0;
    std::vector<Gate> gates;

    Circuit() = default;
    explicit Circuit(int n) : num_qubits(n) {}

    void add(Gate g) { gates.push_back(std::move(g)); }
    std::size_t size() const { return gates.size(); }
};

StateVector apply_gate(StateVector state, const Gate& gate);
void apply_gate_inplace(StateVector& state, const Gate& gate);

// Pre-resolved form of a circuit: per gate a 2x2 matrix (or flip mask /
// diagonal Z) plus index masks, so repeated execution does no per-gate work
// beyond the amplitude sweep. Used by the hot paths (training, Grover
// powers); semantics identical to run_circuit.
class CompiledCircuit {
  public:
    struct Op {
        int kind; // 0 = 2x2 unitary, 1 = diagonal Z, 2 = flip mask
        Complex m00, m01, m10, m11;
        std::uint64_t tmask = 0;
        std::uint64_t xmask = 0;
        std::uint64_t cmask = 0;
        std::uint64_t cval = 0;
    };

    CompiledCircuit() = default;
    explicit CompiledCircuit(const Circuit& circuit);

    int num_qubits() const { return num_qubits_; }
    std::size_t size() const { return ops_.size(); }

    void run_inplace(StateVector& state) const;
    // re-resolve a single gate after its parameters changed
    void update_gate(std::size_t index, const Gate& gate);

  private:
    int num_qubits_ = 0;
    std::vector<Op> ops_;
};

StateVector run_circuit(StateVector initial, const Circuit& circuit);
StateVector run_from_zero(const Circuit& circuit);

Circuit inverse_circuit(const Circuit& circuit);

// Promote every gate with `control` as an additional |1>-polarity control.
Circuit controlled_wrap(const Circuit& circuit, int control);

// Layered depth: gates with disjoint qubit footprints share a layer; a
// multi-controlled gate occupies one gate and one layer.
int circuit_depth(const Circuit& circuit);

// Probability table over the given qubits; outcome index uses subset order,
// subset[0] as its most significant bit.
std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& subset);

std::map<std::uint64_t, std::uint64_t> sample_bitstrings(const StateVector& state,
                                                         const std::vector<int>& subset,
                                                         std::uint64_t shots,
                                                         std::uint64_t seed);

double expectation_z(const StateVector& state, int qubit);

} // namespace qrs
