#pragma once

#include "qrs/qnn.hpp"
#include "qrs/quadro.hpp"
#include "qrs/smoothing.hpp"
#include "qrs/stateprep.hpp"

#include <string>
#include <vector>

namespace qrs {

enum class NoiseModel { Hamming, Uniform };

std::string to_string(NoiseModel model);
NoiseModel noise_model_from_string(const std::string& s);

struct CertificationRecord {
    int sample_index = 0;
    int true_label = 0;
    int predicted = 0;
    double p_lower = 0.0;
    int radius = -1; // -1 = abstain
    long long oracle_calls = 0;
    std::string path;         // "rs" | "quadro"
    std::string distribution; // "hamming" | "uniform"
    double sigma = 0.0;
    std::uint64_t seed = 0;
};

// Classical randomized smoothing: N perturbations, one Bernoulli measurement
// shot of the classifier output per perturbation (so both certification paths
// estimate E[y(x~)]), Clopper-Pearson lower bound, exact-law Delta radii.
CertificationRecord rs_certify_sample(const Bits& x, int label, const HammingNoiseSpec& spec,
                                      const ClassifierParams& params, long long shots,
                                      double alpha, std::uint64_t seed,
                                      NoiseModel model = NoiseModel::Hamming);

// Amplitude-estimation path: noise prep + classifier assembled into a Grover
// operator, IQPE with median boosting; Delta comes from the circuit-induced
// marginal (the distribution actually smoothed over).
CertificationRecord quadro_certify_sample(const Bits& x, int label,
                                          const HammingNoiseSpec& spec,
                                          const ClassifierParams& params,
                                          const QaeConfig& config, NoiseModel model,
                                          std::vector<PhaseEstimate>* runs = nullptr);

// radius -> fraction of records that are correct and certified at >= radius
std::vector<std::pair<int, double>> certified_accuracy_curve(
    const std::vector<CertificationRecord>& records, const std::vector<int>& radii);

std::string records_to_csv(const std::vector<CertificationRecord>& records);
std::string curve_to_csv(const std::vector<std::pair<int, double>>& curve,
                         const std::string& path_name, long long oracle_calls);

} // namespace qrs
