// Python bindings for the main operations: noise-distribution math, the
// preparation circuits, smoothing bounds, the classifier, and amplitude
// estimation. The full experiment pipeline stays in the C++ CLI.

#include "qrs/certify.hpp"
#include "qrs/preprocess.hpp"
#include "qrs/qnn.hpp"
#include "qrs/quadro.hpp"
#include "qrs/smoothing.hpp"
#include "qrs/stateprep.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace qrs;

namespace {

Bits to_bits(const std::string& s) { return bits_from_string(s); }

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "statevector simulation and certified smoothing primitives";

    py::class_<HammingNoiseSpec>(m, "HammingNoiseSpec")
        .def(py::init([](int n, int k, double sigma) {
                 HammingNoiseSpec s{n, k, sigma};
                 s.validate();
                 return s;
             }),
             py::arg("n"), py::arg("k"), py::arg("sigma"))
        .def_readonly("n", &HammingNoiseSpec::n)
        .def_readonly("k", &HammingNoiseSpec::k)
        .def_readonly("sigma", &HammingNoiseSpec::sigma);

    py::class_<DiscreteDistribution>(m, "DiscreteDistribution")
        .def_readonly("n", &DiscreteDistribution::n)
        .def_readonly("probs", &DiscreteDistribution::probs)
        .def("prob", [](const DiscreteDistribution& d, const std::string& x) {
            return d.prob(to_bits(x));
        })
        .def("to_csv", &distribution_to_csv);

    m.def("hamming_weights", &hamming_weights, py::arg("spec"));
    m.def(
        "hamming_point_probability",
        [](const HammingNoiseSpec& spec, int distance) {
            return hamming_point_probability(spec, distance);
        },
        py::arg("spec"), py::arg("distance"));
    m.def(
        "target_distribution",
        [](const HammingNoiseSpec& spec, const std::string& x) {
            return target_distribution(spec, to_bits(x));
        },
        py::arg("spec"), py::arg("x"));
    m.def(
        "uniform_target_distribution",
        [](int n, double sigma, const std::string& x) {
            return uniform_target_distribution(n, sigma, to_bits(x));
        },
        py::arg("n"), py::arg("sigma"), py::arg("x"));

    m.def(
        "hamming_prep_distribution",
        [](const HammingNoiseSpec& spec, const std::string& x) {
            std::vector<int> data(spec.n);
            for (int i = 0; i < spec.n; ++i) data[i] = i;
            return induced_distribution(hamming_prep_circuit(spec, to_bits(x)), data);
        },
        py::arg("spec"), py::arg("x"),
        "data-register marginal prepared by the shallow ancilla circuit");
    m.def(
        "uniform_prep_distribution",
        [](int n, double sigma, const std::string& x) {
            std::vector<int> data(n);
            for (int i = 0; i < n; ++i) data[i] = i;
            return induced_distribution(uniform_prep_circuit(n, sigma, to_bits(x)), data);
        },
        py::arg("n"), py::arg("sigma"), py::arg("x"));
    m.def(
        "mottonen_distribution",
        [](const DiscreteDistribution& target) {
            std::vector<int> data(target.n);
            for (int i = 0; i < target.n; ++i) data[i] = i;
            return induced_distribution(mottonen_circuit(target), data);
        },
        py::arg("target"), "Born distribution of the exact amplitude loader");
    m.def(
        "mottonen_gate_count",
        [](const DiscreteDistribution& target) {
            return mottonen_circuit(target).size();
        },
        py::arg("target"));

    m.def("clopper_pearson_lower", &clopper_pearson_lower, py::arg("successes"),
          py::arg("trials"), py::arg("alpha"));
    m.def(
        "delta_profile",
        [](const DiscreteDistribution& dist) { return delta_profile(dist); },
        py::arg("dist"), "total-variation Delta(r) for r = 1..n");
    m.def("certified_radius", &certified_radius, py::arg("p_lower"), py::arg("deltas"));
    m.def(
        "exact_smoothed_value",
        [](const DiscreteDistribution& dist, const std::function<double(std::string)>& f) {
            return exact_smoothed_value(
                dist, [&](const Bits& b) { return f(bits_to_string(b)); });
        },
        py::arg("dist"), py::arg("soft_classifier"));
    m.def(
        "sample_perturbation",
        [](const HammingNoiseSpec& spec, const std::string& x, std::uint64_t seed,
           std::uint64_t count) {
            Rng rng(seed);
            std::vector<std::string> out;
            out.reserve(count);
            for (std::uint64_t i = 0; i < count; ++i) {
                out.push_back(bits_to_string(sample_perturbation(spec, to_bits(x), rng)));
            }
            return out;
        },
        py::arg("spec"), py::arg("x"), py::arg("seed"), py::arg("count") = 1);

    py::class_<ClassifierParams>(m, "ClassifierParams")
        .def_readonly("num_qubits", &ClassifierParams::num_qubits)
        .def_readonly("num_layers", &ClassifierParams::num_layers)
        .def_readonly("angles", &ClassifierParams::angles)
        .def_readonly("output_qubit", &ClassifierParams::output_qubit);
    m.def("load_params_csv", &load_params_csv, py::arg("path"));
    m.def(
        "predict_soft",
        [](const ClassifierParams& p, const std::string& x) {
            return predict_soft(p, to_bits(x));
        },
        py::arg("params"), py::arg("x"));
    m.def(
        "train_classifier",
        [](const std::vector<std::string>& inputs, const std::vector<int>& labels,
           int num_qubits, int num_layers, double lr, int epochs, std::uint64_t seed) {
            LabeledDataset data;
            for (const auto& s : inputs) data.inputs.push_back(to_bits(s));
            data.labels = labels;
            TrainConfig cfg;
            cfg.learning_rate = lr;
            cfg.epochs = epochs;
            cfg.seed = seed;
            TrainResult r = train(cfg, data, num_qubits, num_layers);
            return py::make_tuple(r.params, r.loss_history);
        },
        py::arg("inputs"), py::arg("labels"), py::arg("num_qubits"), py::arg("num_layers"),
        py::arg("lr") = 0.1, py::arg("epochs") = 200, py::arg("seed") = 0);
    m.def(
        "evaluate_accuracy",
        [](const ClassifierParams& p, const std::vector<std::string>& inputs,
           const std::vector<int>& labels) {
            LabeledDataset data;
            for (const auto& s : inputs) data.inputs.push_back(to_bits(s));
            data.labels = labels;
            return evaluate_accuracy(p, data);
        },
        py::arg("params"), py::arg("inputs"), py::arg("labels"));

    py::class_<SmoothedEstimate>(m, "SmoothedEstimate")
        .def_readonly("p_hat", &SmoothedEstimate::p_hat)
        .def_readonly("p_lower", &SmoothedEstimate::p_lower)
        .def_readonly("alpha", &SmoothedEstimate::alpha)
        .def_readonly("trials", &SmoothedEstimate::trials)
        .def_readonly("oracle_calls", &SmoothedEstimate::oracle_calls);
    m.def(
        "quadro_smoothed_estimate",
        [](const HammingNoiseSpec& spec, const std::string& x, const ClassifierParams& p,
           int m_bits, int shots_per_bit, int repetitions, double alpha,
           std::uint64_t seed, const std::string& distribution) {
            QaeConfig cfg;
            cfg.m = m_bits;
            cfg.shots_per_bit = shots_per_bit;
            cfg.repetitions = repetitions;
            cfg.alpha = alpha;
            cfg.seed = seed;
            const NoiseModel model = noise_model_from_string(distribution);
            const Circuit prep = model == NoiseModel::Hamming
                                     ? hamming_prep_circuit(spec, to_bits(x))
                                     : uniform_prep_circuit(spec.n, spec.sigma, to_bits(x));
            return quadro_estimate(prep, classifier_circuit(p), p.output_qubit, cfg);
        },
        py::arg("spec"), py::arg("x"), py::arg("params"), py::arg("m"),
        py::arg("shots_per_bit") = 33, py::arg("repetitions") = 5, py::arg("alpha") = 0.1,
        py::arg("seed") = 0, py::arg("distribution") = "hamming");
    m.def("oracle_call_budget", &oracle_call_budget, py::arg("m"));

    m.def(
        "bow_transform",
        [](const std::vector<double>& values, int window, int word, bool first_half) {
            BowConfig cfg;
            cfg.window_size = window;
            cfg.word_size = word;
            cfg.truncate_to_first_half = first_half;
            return bits_to_string(bow_transform(values, cfg));
        },
        py::arg("values"), py::arg("window") = 15, py::arg("word") = 2,
        py::arg("first_half") = true);
}
