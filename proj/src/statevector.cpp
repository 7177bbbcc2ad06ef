#include "qrs/statevector.hpp"

#include "qrs/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qrs {

namespace {

constexpr std::uint64_t kParallelThreshold = std::uint64_t{1} << 16;

void check_qubit(int q, int n, const char* what) {
    if (q < 0 || q >= n) {
        throw std::out_of_range(std::string(what) + " qubit index " + std::to_string(q) +
                                " out of range for " + std::to_string(n) + " qubits");
    }
}

struct Mat2 {
    Complex m00, m01, m10, m11;
};

Mat2 rot_matrix(double alpha, double beta, double gamma) {
    const double cb = std::cos(beta / 2.0);
    const double sb = std::sin(beta / 2.0);
    const Complex epp = std::polar(1.0, (alpha + gamma) / 2.0);
    const Complex epm = std::polar(1.0, (alpha - gamma) / 2.0);
    return {cb / epp, -sb * epm, sb / epm, cb * epp};
}

// Base operation with controls stripped off: either a 2x2 unitary on one
// target, a diagonal Z on one target, or a bit-flip on a target mask.
enum class BaseOp { TwoByTwo, DiagZ, FlipMask };

struct Resolved {
    BaseOp op;
    Mat2 mat{};
    std::vector<int> targets;
    std::vector<int> controls;
    std::vector<std::uint8_t> polarity;
};

Resolved resolve(const Gate& g) {
    Resolved r;
    r.targets = g.targets;
    r.controls = g.controls;
    r.polarity = g.control_polarity;
    if (r.polarity.size() != r.controls.size()) {
        if (r.polarity.empty()) {
            r.polarity.assign(r.controls.size(), 1);
        } else {
            throw std::invalid_argument("control_polarity size mismatch");
        }
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (g.kind) {
    case GateKind::X:
    case GateKind::CNOT:
    case GateKind::MultiControlledX:
        r.op = BaseOp::FlipMask;
        break;
    case GateKind::H:
        r.op = BaseOp::TwoByTwo;
        r.mat = {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
        break;
    case GateKind::RY:
    case GateKind::ControlledRY: {
        r.op = BaseOp::TwoByTwo;
        const double c = std::cos(g.params[0] / 2.0);
        const double s = std::sin(g.params[0] / 2.0);
        r.mat = {c, -s, s, c};
        break;
    }
    case GateKind::RZ: {
        r.op = BaseOp::TwoByTwo;
        const Complex e = std::polar(1.0, g.params[0] / 2.0);
        r.mat = {1.0 / e, 0.0, 0.0, e};
        break;
    }
    case GateKind::Rot:
        r.op = BaseOp::TwoByTwo;
        r.mat = rot_matrix(g.params[0], g.params[1], g.params[2]);
        break;
    case GateKind::CZ:
    case GateKind::MultiControlledZ:
        r.op = BaseOp::DiagZ;
        break;
    }
    return r;
}

} // namespace

Bits bits_from_string(const std::string& s) {
    Bits b;
    b.reserve(s.size());
    for (char c : s) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bitstring may contain only 0/1, got: " + s);
        }
        b.push_back(static_cast<std::uint8_t>(c - '0'));
    }
    return b;
}

std::string bits_to_string(const Bits& b) {
    std::string s;
    s.reserve(b.size());
    for (auto v : b) s.push_back(v ? '1' : '0');
    return s;
}

int hamming_distance(const Bits& a, const Bits& b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("hamming_distance: length mismatch");
    }
    int d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] != b[i]);
    return d;
}

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > 28) {
        throw std::invalid_argument("num_qubits must be in [1, 28]");
    }
    amps_.assign(std::uint64_t{1} << num_qubits, Complex{0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector StateVector::basis(int num_qubits, const Bits& bits) {
    if (static_cast<int>(bits.size()) != num_qubits) {
        throw std::invalid_argument("basis: bit count must equal num_qubits");
    }
    StateVector s(num_qubits);
    std::uint64_t idx = 0;
    for (int q = 0; q < num_qubits; ++q) {
        if (bits[q]) idx |= s.qubit_mask(q);
    }
    s.amps_[0] = 0.0;
    s.amps_[idx] = 1.0;
    return s;
}

double StateVector::norm() const {
    double t = 0.0;
    for (const auto& a : amps_) t += std::norm(a);
    return std::sqrt(t);
}

Gate Gate::x(int target) { return {GateKind::X, {target}, {}, {}}; }
Gate Gate::h(int target) { return {GateKind::H, {target}, {}, {}}; }

Gate Gate::ry(int target, double theta) {
    Gate g{GateKind::RY, {target}, {}, {}};
    g.params[0] = theta;
    return g;
}

Gate Gate::rz(int target, double theta) {
    Gate g{GateKind::RZ, {target}, {}, {}};
    g.params[0] = theta;
    return g;
}

Gate Gate::rot(int target, double alpha, double beta, double gamma) {
    Gate g{GateKind::Rot, {target}, {}, {}};
    g.params[0] = alpha;
    g.params[1] = beta;
    g.params[2] = gamma;
    return g;
}

Gate Gate::cnot(int control, int target) {
    return {GateKind::CNOT, {target}, {control}, {1}};
}

Gate Gate::cz(int control, int target) {
    return {GateKind::CZ, {target}, {control}, {1}};
}

Gate Gate::cry(int control, int target, double theta) {
    Gate g{GateKind::ControlledRY, {target}, {control}, {1}};
    g.params[0] = theta;
    return g;
}

Gate Gate::z(int target) { return {GateKind::MultiControlledZ, {target}, {}, {}}; }

Gate Gate::mcx(std::vector<int> controls, std::vector<int> targets,
               std::vector<std::uint8_t> polarity) {
    if (polarity.empty()) polarity.assign(controls.size(), 1);
    return {GateKind::MultiControlledX, std::move(targets), std::move(controls),
            std::move(polarity)};
}

Gate Gate::mcz(std::vector<int> controls, int target, std::vector<std::uint8_t> polarity) {
    if (polarity.empty()) polarity.assign(controls.size(), 1);
    return {GateKind::MultiControlledZ, {target}, std::move(controls), std::move(polarity)};
}

Gate Gate::with_control(int control, std::uint8_t polarity) const {
    for (int q : footprint()) {
        if (q == control) {
            throw std::invalid_argument("with_control: control qubit " +
                                        std::to_string(control) + " collides with gate");
        }
    }
    Gate g = *this;
    if (g.control_polarity.size() != g.controls.size()) {
        g.control_polarity.assign(g.controls.size(), 1);
    }
    g.controls.push_back(control);
    g.control_polarity.push_back(polarity);
    return g;
}

Gate Gate::adjoint() const {
    Gate g = *this;
    switch (kind) {
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::ControlledRY:
        g.params[0] = -params[0];
        break;
    case GateKind::Rot:
        g.params[0] = -params[2];
        g.params[1] = -params[1];
        g.params[2] = -params[0];
        break;
    default:
        break; // X, H, CNOT, CZ, MCX, MCZ are self-adjoint
    }
    return g;
}

std::vector<int> Gate::footprint() const {
    std::vector<int> f = targets;
    f.insert(f.end(), controls.begin(), controls.end());
    return f;
}

namespace {

CompiledCircuit::Op compile_gate(const Gate& gate, int n) {
    Resolved r = resolve(gate);

    for (int q : r.targets) check_qubit(q, n, "target");
    for (int q : r.controls) check_qubit(q, n, "control");
    {
        std::vector<int> f = r.targets;
        f.insert(f.end(), r.controls.begin(), r.controls.end());
        std::sort(f.begin(), f.end());
        if (std::adjacent_find(f.begin(), f.end()) != f.end()) {
            throw std::invalid_argument("gate targets/controls must be disjoint");
        }
    }
    if (r.op != BaseOp::FlipMask && r.targets.size() != 1) {
        throw std::invalid_argument("this gate kind takes exactly one target");
    }
    if (r.targets.empty()) {
        throw std::invalid_argument("gate needs at least one target");
    }

    CompiledCircuit::Op op;
    op.kind = r.op == BaseOp::TwoByTwo ? 0 : (r.op == BaseOp::DiagZ ? 1 : 2);
    op.m00 = r.mat.m00;
    op.m01 = r.mat.m01;
    op.m10 = r.mat.m10;
    op.m11 = r.mat.m11;
    for (std::size_t i = 0; i < r.controls.size(); ++i) {
        const std::uint64_t bit = std::uint64_t{1} << (n - 1 - r.controls[i]);
        op.cmask |= bit;
        if (r.polarity[i]) op.cval |= bit;
    }
    for (int q : r.targets) op.xmask |= std::uint64_t{1} << (n - 1 - q);
    if (r.op != BaseOp::FlipMask) op.tmask = op.xmask;
    return op;
}

void run_op(StateVector& state, const CompiledCircuit::Op& op) {
    auto& amps = state.amplitudes();
    const std::int64_t dim = static_cast<std::int64_t>(state.dim());
    // the parallel region costs microseconds per entry, so small states take
    // the plain loops
    const bool par = dim >= static_cast<std::int64_t>(kParallelThreshold);

    if (op.kind == 2) { // flip mask
        auto body = [&](std::int64_t i) {
            const std::uint64_t u = static_cast<std::uint64_t>(i);
            const std::uint64_t v = u ^ op.xmask;
            if (u < v && (u & op.cmask) == op.cval) {
                std::swap(amps[u], amps[v]);
            }
        };
        if (par) {
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < dim; ++i) body(i);
        } else {
            for (std::int64_t i = 0; i < dim; ++i) body(i);
        }
        return;
    }

    if (op.kind == 1) { // diagonal Z
        auto body = [&](std::int64_t i) {
            const std::uint64_t u = static_cast<std::uint64_t>(i);
            if ((u & op.tmask) && (u & op.cmask) == op.cval) {
                amps[u] = -amps[u];
            }
        };
        if (par) {
#pragma omp parallel for schedule(static)
            for (std::int64_t i = 0; i < dim; ++i) body(i);
        } else {
            for (std::int64_t i = 0; i < dim; ++i) body(i);
        }
        return;
    }

    // General 2x2: iterate pair indices with the target bit inserted as 0.
    // Complex products written out in real arithmetic; amplitudes are finite
    // by construction, so the NaN-propagating library multiply is not needed.
    const std::uint64_t t = op.tmask;
    const std::uint64_t low = t - 1;
    const std::uint64_t high = ~low << 1;
    const std::int64_t half = dim >> 1;
    const double m00r = op.m00.real(), m00i = op.m00.imag();
    const double m01r = op.m01.real(), m01i = op.m01.imag();
    const double m10r = op.m10.real(), m10i = op.m10.imag();
    const double m11r = op.m11.real(), m11i = op.m11.imag();
    const std::uint64_t cmask = op.cmask, cval = op.cval;
    double* data = reinterpret_cast<double*>(amps.data());

    auto body = [=](std::int64_t k) {
        const std::uint64_t u = ((static_cast<std::uint64_t>(k) << 1) & high) |
                                (static_cast<std::uint64_t>(k) & low);
        if ((u & cmask) != cval) return;
        const std::uint64_t v = u | t;
        const double a0r = data[2 * u], a0i = data[2 * u + 1];
        const double a1r = data[2 * v], a1i = data[2 * v + 1];
        data[2 * u] = m00r * a0r - m00i * a0i + m01r * a1r - m01i * a1i;
        data[2 * u + 1] = m00r * a0i + m00i * a0r + m01r * a1i + m01i * a1r;
        data[2 * v] = m10r * a0r - m10i * a0i + m11r * a1r - m11i * a1i;
        data[2 * v + 1] = m10r * a0i + m10i * a0r + m11r * a1i + m11i * a1r;
    };
    if (par) {
#pragma omp parallel for schedule(static)
        for (std::int64_t k = 0; k < half; ++k) body(k);
    } else {
        for (std::int64_t k = 0; k < half; ++k) body(k);
    }
}

} // namespace

CompiledCircuit::CompiledCircuit(const Circuit& circuit) : num_qubits_(circuit.num_qubits) {
    ops_.reserve(circuit.gates.size());
    for (const Gate& g : circuit.gates) {
        ops_.push_back(compile_gate(g, num_qubits_));
    }
}

void CompiledCircuit::run_inplace(StateVector& state) const {
    if (state.num_qubits() != num_qubits_) {
        throw std::invalid_argument("CompiledCircuit: qubit count mismatch");
    }
    for (const Op& op : ops_) {
        run_op(state, op);
    }
}

void CompiledCircuit::update_gate(std::size_t index, const Gate& gate) {
    ops_.at(index) = compile_gate(gate, num_qubits_);
}

void apply_gate_inplace(StateVector& state, const Gate& gate) {
    run_op(state, compile_gate(gate, state.num_qubits()));
}

StateVector apply_gate(StateVector state, const Gate& gate) {
    apply_gate_inplace(state, gate);
    return state;
}

StateVector run_circuit(StateVector initial, const Circuit& circuit) {
    if (circuit.num_qubits != initial.num_qubits()) {
        throw std::invalid_argument("run_circuit: qubit count mismatch (" +
                                    std::to_string(circuit.num_qubits) + " vs " +
                                    std::to_string(initial.num_qubits()) + ")");
    }
    for (const Gate& g : circuit.gates) {
        apply_gate_inplace(initial, g);
    }
    return initial;
}

StateVector run_from_zero(const Circuit& circuit) {
    return run_circuit(StateVector(circuit.num_qubits), circuit);
}

Circuit inverse_circuit(const Circuit& circuit) {
    Circuit inv(circuit.num_qubits);
    inv.gates.reserve(circuit.gates.size());
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        inv.gates.push_back(it->adjoint());
    }
    return inv;
}

Circuit controlled_wrap(const Circuit& circuit, int control) {
    Circuit out(std::max(circuit.num_qubits, control + 1));
    out.gates.reserve(circuit.gates.size());
    for (const Gate& g : circuit.gates) {
        out.gates.push_back(g.with_control(control));
    }
    return out;
}

int circuit_depth(const Circuit& circuit) {
    std::vector<int> level(circuit.num_qubits, 0);
    int depth = 0;
    for (const Gate& g : circuit.gates) {
        int l = 0;
        for (int q : g.footprint()) l = std::max(l, level[q]);
        ++l;
        for (int q : g.footprint()) level[q] = l;
        depth = std::max(depth, l);
    }
    return depth;
}

std::vector<double> marginal_probabilities(const StateVector& state,
                                           const std::vector<int>& subset) {
    const int n = state.num_qubits();
    if (subset.empty() || subset.size() > 26) {
        throw std::invalid_argument("marginal subset must have 1..26 qubits");
    }
    {
        std::vector<int> s = subset;
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end()) {
            throw std::invalid_argument("marginal subset must be distinct");
        }
    }
    for (int q : subset) check_qubit(q, n, "subset");

    std::vector<double> out(std::uint64_t{1} << subset.size(), 0.0);
    const std::uint64_t dim = state.dim();
    const auto& amps = state.amplitudes();
    std::vector<int> shifts(subset.size());
    for (std::size_t j = 0; j < subset.size(); ++j) {
        shifts[j] = n - 1 - subset[j];
    }
    for (std::uint64_t i = 0; i < dim; ++i) {
        const double p = std::norm(amps[i]);
        if (p == 0.0) continue;
        std::uint64_t o = 0;
        for (std::size_t j = 0; j < subset.size(); ++j) {
            o = (o << 1) | ((i >> shifts[j]) & 1ULL);
        }
        out[o] += p;
    }
    return out;
}

std::map<std::uint64_t, std::uint64_t> sample_bitstrings(const StateVector& state,
                                                         const std::vector<int>& subset,
                                                         std::uint64_t shots,
                                                         std::uint64_t seed) {
    if (shots == 0) {
        throw std::invalid_argument("shots must be >= 1");
    }
    const std::vector<double> probs = marginal_probabilities(state, subset);
    std::vector<double> cum(probs.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        acc += probs[i];
        cum[i] = acc;
    }
    cum.back() = 1.0;

    Rng rng(seed);
    std::map<std::uint64_t, std::uint64_t> counts;
    for (std::uint64_t s = 0; s < shots; ++s) {
        const double u = rng.u01();
        const auto it = std::lower_bound(cum.begin(), cum.end(), u);
        const std::uint64_t outcome =
            static_cast<std::uint64_t>(std::distance(cum.begin(), it));
        ++counts[std::min<std::uint64_t>(outcome, cum.size() - 1)];
    }
    return counts;
}

double expectation_z(const StateVector& state, int qubit) {
    check_qubit(qubit, state.num_qubits(), "expectation_z");
    const std::uint64_t mask = state.qubit_mask(qubit);
    const auto& amps = state.amplitudes();
    double p1 = 0.0, p0 = 0.0;
    for (std::uint64_t i = 0; i < state.dim(); ++i) {
        const double p = std::norm(amps[i]);
        if (i & mask) {
            p1 += p;
        } else {
            p0 += p;
        }
    }
    return p0 - p1;
}

} // namespace qrs
