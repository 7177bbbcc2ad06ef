#pragma once

#include "qrs/statevector.hpp"

#include <string>
#include <vector>

namespace qrs {

// Strongly entangling classifier: per layer a general Rot on every qubit
// followed by a ring of CNOTs from qubit q to (q + entangling_range) mod n.
struct ClassifierParams {
    int num_qubits = 0;
    int num_layers = 0;
    std::vector<double> angles; // [layer][qubit][axis], axis in {alpha, beta, gamma}
    int output_qubit = 0;
    int entangling_range = 1;

    double& angle(int layer, int qubit, int axis) {
        return angles[(static_cast<std::size_t>(layer) * num_qubits + qubit) * 3 + axis];
    }
    double angle(int layer, int qubit, int axis) const {
        return angles[(static_cast<std::size_t>(layer) * num_qubits + qubit) * 3 + axis];
    }
    void validate() const;
};

struct LabeledDataset {
    std::vector<Bits> inputs;
    std::vector<int> labels;

    std::size_t size() const { return inputs.size(); }
    void validate() const;
};

Circuit classifier_circuit(const ClassifierParams& params);

// P(output_qubit = 1) = (1 - <Z>)/2 for the basis-embedded input.
double predict_soft(const ClassifierParams& params, const Bits& x);
int predict_hard(const ClassifierParams& params, const Bits& x);

double mse_loss(const ClassifierParams& params, const LabeledDataset& data);

// d/dtheta of the mean squared error via the two-point parameter-shift rule.
std::vector<double> parameter_shift_gradient(const ClassifierParams& params,
                                             const LabeledDataset& data);

struct TrainConfig {
    double learning_rate = 0.1;
    int epochs = 200;
    int batch_size = 0; // 0 = full batch
    std::uint64_t seed = 0;
};

struct TrainResult {
    ClassifierParams params;
    std::vector<double> loss_history; // one entry per epoch
};

TrainResult train(const TrainConfig& config, const LabeledDataset& data, int num_qubits,
                  int num_layers, int output_qubit = 0, int entangling_range = 1);

double evaluate_accuracy(const ClassifierParams& params, const LabeledDataset& data);

void save_params_csv(const ClassifierParams& params, const std::string& path);
ClassifierParams load_params_csv(const std::string& path);

} // namespace qrs
