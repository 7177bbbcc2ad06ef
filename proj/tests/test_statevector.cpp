#include "qrs/statevector.hpp"

#include "qrs/rng.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <cmath>

using namespace qrs;
using namespace testutil;

namespace {

Circuit random_circuit(int num_qubits, int num_gates, Rng& rng) {
    Circuit c(num_qubits);
    for (int g = 0; g < num_gates; ++g) {
        const int kind = static_cast<int>(rng.bounded(6));
        const int q = static_cast<int>(rng.bounded(num_qubits));
        const double theta = (rng.u01() * 2.0 - 1.0) * 3.0;
        switch (kind) {
        case 0: c.add(Gate::x(q)); break;
        case 1: c.add(Gate::h(q)); break;
        case 2: c.add(Gate::ry(q, theta)); break;
        case 3: c.add(Gate::rz(q, theta)); break;
        case 4:
            c.add(Gate::rot(q, theta, rng.u01(), -theta));
            break;
        default: {
            if (num_qubits > 1) {
                int t = static_cast<int>(rng.bounded(num_qubits));
                while (t == q) t = static_cast<int>(rng.bounded(num_qubits));
                c.add(rng.u01() < 0.5 ? Gate::cnot(q, t) : Gate::cz(q, t));
            } else {
                c.add(Gate::x(q));
            }
            break;
        }
        }
    }
    return c;
}

StateVector random_state(int num_qubits, Rng& rng) {
    StateVector s(num_qubits);
    auto& a = s.amplitudes();
    double norm = 0.0;
    for (auto& v : a) {
        v = Complex{rng.u01() * 2.0 - 1.0, rng.u01() * 2.0 - 1.0};
        norm += std::norm(v);
    }
    norm = std::sqrt(norm);
    for (auto& v : a) v /= norm;
    return s;
}

} // namespace

TEST_CASE("single-qubit gates on |0>") {
    StateVector s(1);
    const auto h = apply_gate(s, Gate::h(0));
    const double r = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(h.amplitude(0) - Complex{r, 0}) < 1e-12);
    CHECK(std::abs(h.amplitude(1) - Complex{r, 0}) < 1e-12);

    const auto x = apply_gate(s, Gate::x(0));
    CHECK(std::abs(x.amplitude(1) - Complex{1, 0}) < 1e-12);

    // RY(pi/2) against the series matrix exponential
    const auto got = apply_gate(s, Gate::ry(0, M_PI / 2));
    const auto expect = mat_vec(ry_oracle(M_PI / 2), {Complex{1, 0}, Complex{0, 0}});
    CHECK(max_abs_diff(got.amplitudes(), expect) < 1e-12);
    CHECK(std::abs(got.amplitude(0).real() - 0.7071) < 5e-5);
    CHECK(std::abs(got.amplitude(1).real() - 0.7071) < 5e-5);
}

TEST_CASE("rotation gates match matrix-exponential oracle on random states") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const double theta = (rng.u01() * 2.0 - 1.0) * 3.0;
        StateVector s = random_state(1, rng);
        const std::vector<Complex> in = s.amplitudes();

        const auto ry = apply_gate(s, Gate::ry(0, theta));
        CHECK(max_abs_diff(ry.amplitudes(), mat_vec(ry_oracle(theta), in)) < 1e-12);

        const auto rz = apply_gate(s, Gate::rz(0, theta));
        CHECK(max_abs_diff(rz.amplitudes(), mat_vec(rz_oracle(theta), in)) < 1e-12);

        const double a = rng.u01(), b = rng.u01(), g = rng.u01();
        const auto rot = apply_gate(s, Gate::rot(0, a, b, g));
        const Dense oracle = mat_mul(rz_oracle(g), mat_mul(ry_oracle(b), rz_oracle(a)));
        CHECK(max_abs_diff(rot.amplitudes(), mat_vec(oracle, in)) < 1e-12);
    }
}

TEST_CASE("big-endian convention: X on qubit 0 of |000> sets index 4") {
    StateVector s(3);
    const auto out = apply_gate(s, Gate::x(0));
    CHECK(std::abs(out.amplitude(4) - Complex{1, 0}) < 1e-15);
    for (std::uint64_t i = 0; i < 8; ++i) {
        if (i != 4) CHECK(std::abs(out.amplitude(i)) < 1e-15);
    }
}

TEST_CASE("run_circuit basics") {
    StateVector s(1);
    Circuit empty(1);
    CHECK(max_abs_diff(run_circuit(s, empty).amplitudes(), s.amplitudes()) == 0.0);

    Circuit xx(1);
    xx.add(Gate::x(0));
    xx.add(Gate::x(0));
    CHECK(std::abs(run_circuit(s, xx).amplitude(0) - Complex{1, 0}) < 1e-15);

    // Bell state against a dense 4x4 product oracle
    Circuit bell(2);
    bell.add(Gate::h(0));
    bell.add(Gate::cnot(0, 1));
    const auto got = run_from_zero(bell);
    Dense u = mat_mul(controlled(pauli_x()), kron(hadamard(), Dense::identity(2)));
    std::vector<Complex> e0(4, 0.0);
    e0[0] = 1.0;
    CHECK(max_abs_diff(got.amplitudes(), mat_vec(u, e0)) < 1e-12);
    CHECK(std::abs(got.amplitude(0) - Complex{1 / std::sqrt(2.0), 0}) < 1e-12);
    CHECK(std::abs(got.amplitude(3) - Complex{1 / std::sqrt(2.0), 0}) < 1e-12);

    StateVector wrong(3);
    CHECK_THROWS_AS(run_circuit(wrong, bell), std::invalid_argument);
}

TEST_CASE("gate validation errors") {
    StateVector s(2);
    CHECK_THROWS_AS(apply_gate(s, Gate::x(2)), std::out_of_range);
    CHECK_THROWS_AS(apply_gate(s, Gate::cnot(1, 1)), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s, Gate::cnot(3, 0)), std::out_of_range);
}

TEST_CASE("marginal probabilities") {
    Circuit bell(2);
    bell.add(Gate::h(0));
    bell.add(Gate::cnot(0, 1));
    const auto state = run_from_zero(bell);

    const auto m0 = marginal_probabilities(state, {0});
    CHECK(std::abs(m0[0] - 0.5) < 1e-12);
    CHECK(std::abs(m0[1] - 0.5) < 1e-12);

    const auto full = marginal_probabilities(state, {0, 1});
    CHECK(std::abs(full[0] - 0.5) < 1e-12);
    CHECK(std::abs(full[3] - 0.5) < 1e-12);

    // GHZ over 3 qubits, subset {0,2}: direct-summation oracle
    Circuit ghz(3);
    ghz.add(Gate::h(0));
    ghz.add(Gate::cnot(0, 1));
    ghz.add(Gate::cnot(1, 2));
    const auto gstate = run_from_zero(ghz);
    const auto m02 = marginal_probabilities(gstate, {0, 2});
    std::vector<double> oracle(4, 0.0);
    for (std::uint64_t i = 0; i < 8; ++i) {
        const std::uint64_t b0 = (i >> 2) & 1, b2 = i & 1;
        oracle[(b0 << 1) | b2] += std::norm(gstate.amplitude(i));
    }
    for (int i = 0; i < 4; ++i) CHECK(std::abs(m02[i] - oracle[i]) < 1e-12);
    CHECK(std::abs(m02[0] - 0.5) < 1e-12);
    CHECK(std::abs(m02[3] - 0.5) < 1e-12);

    CHECK_THROWS_AS(marginal_probabilities(state, {0, 0}), std::invalid_argument);
    CHECK_THROWS_AS(marginal_probabilities(state, {}), std::invalid_argument);
}

TEST_CASE("marginal consistency: sub-marginal equals direct marginal") {
    Rng rng(5);
    const Circuit c = random_circuit(4, 60, rng);
    const auto state = run_from_zero(c);
    const auto mS = marginal_probabilities(state, {0, 2, 3});
    const auto mSub = marginal_probabilities(state, {0, 3});
    // collapse middle bit of mS
    std::vector<double> collapsed(4, 0.0);
    for (int i = 0; i < 8; ++i) {
        collapsed[((i >> 2) << 1) | (i & 1)] += mS[i];
    }
    for (int i = 0; i < 4; ++i) CHECK(std::abs(collapsed[i] - mSub[i]) < 1e-12);
}

TEST_CASE("sampling: determinism, exactness, concentration") {
    StateVector one = StateVector::basis(1, {1});
    const auto counts = sample_bitstrings(one, {0}, 100, 7);
    CHECK(counts.at(1) == 100);
    CHECK(counts.size() == 1);

    const auto plus = apply_gate(StateVector(1), Gate::h(0));
    const auto c1 = sample_bitstrings(plus, {0}, 1000000, 42);
    const double freq = static_cast<double>(c1.at(1)) / 1e6;
    CHECK(std::abs(freq - 0.5) < 0.002);

    const auto c2 = sample_bitstrings(plus, {0}, 1000000, 42);
    CHECK(c1 == c2);

    CHECK_THROWS_AS(sample_bitstrings(plus, {0}, 0, 1), std::invalid_argument);
}

TEST_CASE("sampling chi-square against exact marginals") {
    Rng rng(9);
    const Circuit c = random_circuit(3, 40, rng);
    const auto state = run_from_zero(c);
    const auto probs = marginal_probabilities(state, {0, 1, 2});
    const std::uint64_t shots = 100000;
    const auto counts = sample_bitstrings(state, {0, 1, 2}, shots, 1234);
    double chi2 = 0.0;
    int dof = 0;
    for (int o = 0; o < 8; ++o) {
        const double expected = probs[o] * static_cast<double>(shots);
        if (expected < 1e-9) continue;
        const double observed =
            counts.count(o) ? static_cast<double>(counts.at(o)) : 0.0;
        chi2 += (observed - expected) * (observed - expected) / expected;
        ++dof;
    }
    --dof;
    // 0.999 quantiles of chi2 for dof 1..7
    const double q[8] = {0, 10.83, 13.82, 16.27, 18.47, 20.52, 22.46, 24.32};
    CHECK(chi2 < q[dof]);
}

TEST_CASE("expectation_z") {
    CHECK(expectation_z(StateVector::basis(1, {0}), 0) == doctest::Approx(1.0));
    CHECK(expectation_z(StateVector::basis(1, {1}), 0) == doctest::Approx(-1.0));
    const auto rotated = apply_gate(StateVector(1), Gate::ry(0, M_PI / 2));
    CHECK(std::abs(expectation_z(rotated, 0)) < 1e-12);
    CHECK_THROWS_AS(expectation_z(StateVector(1), 3), std::out_of_range);
}

TEST_CASE("inverse_circuit") {
    Circuit c(1);
    c.add(Gate::ry(0, 0.7));
    const Circuit inv = inverse_circuit(c);
    REQUIRE(inv.gates.size() == 1);
    CHECK(inv.gates[0].params[0] == doctest::Approx(-0.7));

    Circuit hx(1);
    hx.add(Gate::h(0));
    hx.add(Gate::x(0));
    const Circuit ihx = inverse_circuit(hx);
    CHECK(ihx.gates[0].kind == GateKind::X);
    CHECK(ihx.gates[1].kind == GateKind::H);

    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng.bounded(7));
        const Circuit rc = random_circuit(n, 200, rng);
        StateVector psi = random_state(n, rng);
        const std::vector<Complex> before = psi.amplitudes();
        psi = run_circuit(std::move(psi), rc);
        CHECK(std::abs(psi.norm() - 1.0) < 1e-10);
        psi = run_circuit(std::move(psi), inverse_circuit(rc));
        CHECK(fidelity(before, psi.amplitudes()) >= 1.0 - 1e-10);
    }
}

TEST_CASE("controlled_wrap") {
    Circuit c(1);
    c.add(Gate::ry(0, 1.1));
    c.add(Gate::h(0));
    const Circuit wrapped = controlled_wrap(c, 1);

    // control |0>: data unchanged
    StateVector s0(2);
    const auto out0 = run_circuit(s0, wrapped);
    CHECK(std::abs(out0.amplitude(0) - Complex{1, 0}) < 1e-12);

    // control |1>: circuit applied (control = qubit 1, data = qubit 0)
    StateVector s1 = StateVector::basis(2, {0, 1});
    const auto out1 = run_circuit(s1, wrapped);
    const auto ref = run_from_zero(c);
    CHECK(std::abs(out1.amplitude(1) - ref.amplitude(0)) < 1e-12);
    CHECK(std::abs(out1.amplitude(3) - ref.amplitude(1)) < 1e-12);

    // |+> control with circuit [X] against the dense oracle
    Circuit xc(1);
    xc.add(Gate::x(0));
    const Circuit wx = controlled_wrap(xc, 1);
    StateVector plus(2);
    apply_gate_inplace(plus, Gate::h(1));
    const auto got = run_circuit(plus, wx);
    // qubit order in kron: qubit 0 (MSB) is the data qubit here
    Dense cx_data_controlled_by_q1 = Dense::identity(4);
    // build by action: |d, c> -> X^c|d>, c>
    cx_data_controlled_by_q1.m.assign(16, 0.0);
    for (std::uint64_t d = 0; d < 2; ++d)
        for (std::uint64_t ctl = 0; ctl < 2; ++ctl) {
            const std::uint64_t in = (d << 1) | ctl;
            const std::uint64_t outd = ctl ? (1 - d) : d;
            cx_data_controlled_by_q1.at((outd << 1) | ctl, in) = 1.0;
        }
    std::vector<Complex> in(4, 0.0);
    const double r = 1.0 / std::sqrt(2.0);
    in[0] = r;
    in[1] = r;
    CHECK(max_abs_diff(got.amplitudes(), mat_vec(cx_data_controlled_by_q1, in)) < 1e-12);

    CHECK_THROWS_AS(controlled_wrap(c, 0), std::invalid_argument);
}

TEST_CASE("norm preservation on random circuits") {
    Rng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const int n = 2 + static_cast<int>(rng.bounded(7));
        const Circuit c = random_circuit(n, 200, rng);
        const auto out = run_from_zero(c);
        CHECK(std::abs(out.norm() - 1.0) < 1e-10);
    }
}

TEST_CASE("negative-polarity controls") {
    // X on qubit 1 controlled on qubit 0 being |0>
    Gate g = Gate::mcx({0}, {1}, {0});
    const auto out = run_circuit(StateVector(2), Circuit{[] {
                                     Circuit c(2);
                                     c.add(Gate::mcx({0}, {1}, {0}));
                                     return c;
                                 }()});
    CHECK(std::abs(out.amplitude(1) - Complex{1, 0}) < 1e-12); // |01>

    StateVector s = StateVector::basis(2, {1, 0});
    apply_gate_inplace(s, g);
    CHECK(std::abs(s.amplitude(2) - Complex{1, 0}) < 1e-12); // untouched |10>
}

TEST_CASE("multi-controlled gates and multi-target X") {
    // MCX with 2 controls = Toffoli
    StateVector s = StateVector::basis(3, {1, 1, 0});
    apply_gate_inplace(s, Gate::mcx({0, 1}, {2}));
    CHECK(std::abs(s.amplitude(7) - Complex{1, 0}) < 1e-12);

    // multi-target X flips both targets at once
    StateVector t = StateVector::basis(3, {1, 0, 0});
    apply_gate_inplace(t, Gate::mcx({0}, {1, 2}));
    CHECK(std::abs(t.amplitude(7) - Complex{1, 0}) < 1e-12);

    // MCZ phase-flips only the all-ones component
    StateVector z(2);
    apply_gate_inplace(z, Gate::h(0));
    apply_gate_inplace(z, Gate::h(1));
    apply_gate_inplace(z, Gate::mcz({0}, 1));
    CHECK(std::abs(z.amplitude(3) - Complex{-0.5, 0}) < 1e-12);
    CHECK(std::abs(z.amplitude(0) - Complex{0.5, 0}) < 1e-12);
}

TEST_CASE("circuit depth counts disjoint gates in one layer") {
    Circuit c(4);
    c.add(Gate::x(0));
    c.add(Gate::h(1)); // same layer as the X
    c.add(Gate::cnot(0, 1));
    c.add(Gate::cnot(2, 3)); // parallel with previous CNOT
    CHECK(circuit_depth(c) == 2);

    Circuit mc(4);
    mc.add(Gate::mcx({0, 1, 2}, {3}));
    CHECK(circuit_depth(mc) == 1);
}
