#include "qrs/certify.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace qrs {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

std::string to_string(NoiseModel model) {
    return model == NoiseModel::Hamming ? "hamming" : "uniform";
}

NoiseModel noise_model_from_string(const std::string& s) {
    if (s == "hamming") return NoiseModel::Hamming;
    if (s == "uniform") return NoiseModel::Uniform;
    throw std::invalid_argument("unknown noise model: " + s);
}

CertificationRecord rs_certify_sample(const Bits& x, int label, const HammingNoiseSpec& spec,
                                      const ClassifierParams& params, long long shots,
                                      double alpha, std::uint64_t seed, NoiseModel model) {
    if (shots < 1) throw std::invalid_argument("rs_certify_sample: shots must be >= 1");
    spec.validate();
    Rng rng(seed);

    long long votes_one = 0;
    for (long long s = 0; s < shots; ++s) {
        const Bits xt = model == NoiseModel::Hamming
                            ? sample_perturbation(spec, x, rng)
                            : sample_uniform_perturbation(spec.n, spec.sigma, x, rng);
        const double y = predict_soft(params, xt);
        votes_one += rng.bernoulli(y);
    }
    const int predicted = 2 * votes_one > shots ? 1 : 0;
    const long long successes = predicted == 1 ? votes_one : shots - votes_one;
    const double p_lower = clopper_pearson_lower(successes, shots, alpha);

    const std::vector<double> deltas =
        model == NoiseModel::Hamming
            ? delta_profile(spec)
            : delta_profile(uniform_target_distribution(spec.n, spec.sigma, x));

    CertificationRecord rec;
    rec.true_label = label;
    rec.predicted = predicted;
    rec.p_lower = p_lower;
    rec.radius = certified_radius(p_lower, deltas);
    rec.oracle_calls = shots;
    rec.path = "rs";
    rec.distribution = to_string(model);
    rec.sigma = spec.sigma;
    rec.seed = seed;
    return rec;
}

CertificationRecord quadro_certify_sample(const Bits& x, int label,
                                          const HammingNoiseSpec& spec,
                                          const ClassifierParams& params,
                                          const QaeConfig& config, NoiseModel model,
                                          std::vector<PhaseEstimate>* runs) {
    spec.validate();
    config.validate();
    if (params.num_qubits != spec.n) {
        throw std::invalid_argument("quadro_certify_sample: classifier width != n");
    }

    const Circuit prep = model == NoiseModel::Hamming
                             ? hamming_prep_circuit(spec, x)
                             : uniform_prep_circuit(spec.n, spec.sigma, x);
    const Circuit classifier = classifier_circuit(params);

    std::vector<int> data_qubits(spec.n);
    for (int i = 0; i < spec.n; ++i) data_qubits[i] = i;
    const DiscreteDistribution induced = induced_distribution(prep, data_qubits);
    const std::vector<double> deltas = delta_profile(induced);

    const SmoothedEstimate est =
        quadro_estimate(prep, classifier, params.output_qubit, config, runs);

    const int predicted = est.p_hat > 0.5 ? 1 : 0;
    double p_lower_pred;
    if (predicted == 1) {
        p_lower_pred = est.p_lower;
    } else {
        // class-0 bound by symmetry: 1 - (upper bound on the class-1 value)
        const double phi = std::asin(std::sqrt(est.p_hat)) / kPi;
        const double p_upper =
            amplitude_from_phase(std::min(0.5, phi + std::pow(2.0, -config.m)));
        p_lower_pred = 1.0 - p_upper;
    }

    CertificationRecord rec;
    rec.true_label = label;
    rec.predicted = predicted;
    rec.p_lower = p_lower_pred;
    rec.radius = certified_radius(p_lower_pred, deltas);
    rec.oracle_calls = est.oracle_calls;
    rec.path = "quadro";
    rec.distribution = to_string(model);
    rec.sigma = spec.sigma;
    rec.seed = config.seed;
    return rec;
}

std::vector<std::pair<int, double>> certified_accuracy_curve(
    const std::vector<CertificationRecord>& records, const std::vector<int>& radii) {
    if (records.empty()) {
        throw std::invalid_argument("certified_accuracy_curve: no records");
    }
    std::vector<std::pair<int, double>> curve;
    curve.reserve(radii.size());
    for (int r : radii) {
        long long ok = 0;
        for (const CertificationRecord& rec : records) {
            ok += (rec.predicted == rec.true_label && rec.radius >= r);
        }
        curve.emplace_back(r, static_cast<double>(ok) / static_cast<double>(records.size()));
    }
    return curve;
}

std::string records_to_csv(const std::vector<CertificationRecord>& records) {
    std::string out =
        "sample_index,true_label,predicted,p_lower,radius,oracle_calls,path,"
        "distribution,sigma,seed\n";
    for (const CertificationRecord& r : records) {
        out += fmt::format("{},{},{},{:.17g},{},{},{},{},{:.17g},{}\n", r.sample_index,
                           r.true_label, r.predicted, r.p_lower, r.radius, r.oracle_calls,
                           r.path, r.distribution, r.sigma, r.seed);
    }
    return out;
}

std::string curve_to_csv(const std::vector<std::pair<int, double>>& curve,
                         const std::string& path_name, long long oracle_calls) {
    std::string out = "radius,certified_accuracy,path,shots\n";
    for (const auto& [r, acc] : curve) {
        out += fmt::format("{},{:.17g},{},{}\n", r, acc, path_name, oracle_calls);
    }
    return out;
}

} // namespace qrs
