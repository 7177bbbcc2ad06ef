#include "qrs/qnn.hpp"

#include "qrs/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace qrs {

namespace {
constexpr double kHalfPi = 1.57079632679489661923;

int worker_count() {
    if (const char* env = std::getenv("QRS_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Mutable classifier with a compiled circuit; angle updates re-resolve only
// the touched Rot gate. Not thread-safe; one instance per worker.
class Evaluator {
  public:
    explicit Evaluator(const ClassifierParams& params)
        : params_(params),
          circuit_(classifier_circuit(params)),
          compiled_(circuit_),
          scratch_(params.num_qubits),
          gates_per_layer_(params.num_qubits > 1 ? 2 * params.num_qubits
                                                 : params.num_qubits) {
        out_mask_ = scratch_.qubit_mask(params_.output_qubit);
    }

    void set_angle(std::size_t flat_index, double value) {
        const int axis = static_cast<int>(flat_index % 3);
        const std::size_t lq = flat_index / 3;
        const int qubit = static_cast<int>(lq % params_.num_qubits);
        const int layer = static_cast<int>(lq / params_.num_qubits);
        params_.angle(layer, qubit, axis) = value;
        const std::size_t gate_index =
            static_cast<std::size_t>(layer) * gates_per_layer_ + qubit;
        Gate& g = circuit_.gates[gate_index];
        g.params[axis] = value;
        compiled_.update_gate(gate_index, g);
    }

    double angle(std::size_t flat_index) const { return params_.angles[flat_index]; }

    double predict(const Bits& x) {
        auto& amps = scratch_.amplitudes();
        std::fill(amps.begin(), amps.end(), Complex{0.0, 0.0});
        std::uint64_t idx = 0;
        for (int q = 0; q < params_.num_qubits; ++q) {
            if (x[q]) idx |= scratch_.qubit_mask(q);
        }
        amps[idx] = 1.0;
        compiled_.run_inplace(scratch_);
        double p1 = 0.0;
        for (std::uint64_t i = 0; i < scratch_.dim(); ++i) {
            if (i & out_mask_) p1 += std::norm(amps[i]);
        }
        return p1;
    }

  private:
    ClassifierParams params_;
    Circuit circuit_;
    CompiledCircuit compiled_;
    StateVector scratch_;
    std::size_t gates_per_layer_;
    std::uint64_t out_mask_ = 0;
};

} // namespace

void ClassifierParams::validate() const {
    if (num_qubits < 1 || num_layers < 0) {
        throw std::invalid_argument("ClassifierParams: bad shape");
    }
    if (angles.size() != static_cast<std::size_t>(num_layers) * num_qubits * 3) {
        throw std::invalid_argument("ClassifierParams: angle tensor size mismatch");
    }
    if (output_qubit < 0 || output_qubit >= num_qubits) {
        throw std::invalid_argument("ClassifierParams: output_qubit out of range");
    }
    if (entangling_range < 1) {
        throw std::invalid_argument("ClassifierParams: entangling_range must be >= 1");
    }
    for (double a : angles) {
        if (!std::isfinite(a)) throw std::invalid_argument("ClassifierParams: non-finite angle");
    }
}

void LabeledDataset::validate() const {
    if (inputs.size() != labels.size()) {
        throw std::invalid_argument("LabeledDataset: inputs/labels size mismatch");
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (!inputs.empty() && inputs[i].size() != inputs[0].size()) {
            throw std::invalid_argument("LabeledDataset: ragged inputs");
        }
        if (labels[i] != 0 && labels[i] != 1) {
            throw std::invalid_argument("LabeledDataset: labels must be 0/1");
        }
    }
}

Circuit classifier_circuit(const ClassifierParams& params) {
    params.validate();
    const int n = params.num_qubits;
    Circuit c(n);
    for (int l = 0; l < params.num_layers; ++l) {
        for (int q = 0; q < n; ++q) {
            c.add(Gate::rot(q, params.angle(l, q, 0), params.angle(l, q, 1),
                            params.angle(l, q, 2)));
        }
        if (n > 1) {
            for (int q = 0; q < n; ++q) {
                c.add(Gate::cnot(q, (q + params.entangling_range) % n));
            }
        }
    }
    return c;
}

double predict_soft(const ClassifierParams& params, const Bits& x) {
    if (static_cast<int>(x.size()) != params.num_qubits) {
        throw std::invalid_argument("predict_soft: input length mismatch");
    }
    Evaluator eval(params);
    return eval.predict(x);
}

int predict_hard(const ClassifierParams& params, const Bits& x) {
    return predict_soft(params, x) > 0.5 ? 1 : 0;
}

double mse_loss(const ClassifierParams& params, const LabeledDataset& data) {
    data.validate();
    if (data.size() == 0) throw std::invalid_argument("mse_loss: empty dataset");
    Evaluator eval(params);
    double loss = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const double d = eval.predict(data.inputs[i]) - data.labels[i];
        loss += d * d;
    }
    return loss / static_cast<double>(data.size());
}

std::vector<double> parameter_shift_gradient(const ClassifierParams& params,
                                             const LabeledDataset& data) {
    data.validate();
    if (data.size() == 0) {
        throw std::invalid_argument("parameter_shift_gradient: empty dataset");
    }
    if (static_cast<int>(data.inputs[0].size()) != params.num_qubits) {
        throw std::invalid_argument("parameter_shift_gradient: input width mismatch");
    }
    const std::size_t nparam = params.angles.size();
    const std::size_t nsamp = data.size();

    std::vector<double> residual(nsamp);
    {
        Evaluator eval(params);
        for (std::size_t i = 0; i < nsamp; ++i) {
            residual[i] = eval.predict(data.inputs[i]) - data.labels[i];
        }
    }

    std::vector<double> grad(nparam, 0.0);
    const int workers =
        std::max(1, std::min<int>(worker_count(), static_cast<int>(nparam)));

    auto worker = [&](std::size_t begin, std::size_t end) {
        Evaluator eval(params);
        for (std::size_t p = begin; p < end; ++p) {
            const double original = eval.angle(p);
            double g = 0.0;
            eval.set_angle(p, original + kHalfPi);
            for (std::size_t i = 0; i < nsamp; ++i) {
                g += residual[i] * eval.predict(data.inputs[i]);
            }
            eval.set_angle(p, original - kHalfPi);
            for (std::size_t i = 0; i < nsamp; ++i) {
                g -= residual[i] * eval.predict(data.inputs[i]);
            }
            eval.set_angle(p, original);
            // d/dtheta mean (y - l)^2 = mean 2 (y - l) * (y+ - y-)/2
            grad[p] = g / static_cast<double>(nsamp);
        }
    };

    if (workers == 1) {
        worker(0, nparam);
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (nparam + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            const std::size_t begin = static_cast<std::size_t>(w) * chunk;
            const std::size_t end = std::min(nparam, begin + chunk);
            if (begin >= end) break;
            pool.emplace_back(worker, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return grad;
}

TrainResult train(const TrainConfig& config, const LabeledDataset& data, int num_qubits,
                  int num_layers, int output_qubit, int entangling_range) {
    data.validate();
    if (data.size() == 0) throw std::invalid_argument("train: empty dataset");

    ClassifierParams params;
    params.num_qubits = num_qubits;
    params.num_layers = num_layers;
    params.output_qubit = output_qubit;
    params.entangling_range = entangling_range;
    params.angles.resize(static_cast<std::size_t>(num_layers) * num_qubits * 3);
    Rng rng(config.seed);
    for (double& a : params.angles) {
        a = (rng.u01() * 2.0 - 1.0) * 0.1;
    }
    params.validate();

    TrainResult result;
    result.loss_history.reserve(config.epochs);

    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        if (config.batch_size <= 0 ||
            config.batch_size >= static_cast<int>(data.size())) {
            const std::vector<double> grad = parameter_shift_gradient(params, data);
            for (std::size_t p = 0; p < grad.size(); ++p) {
                params.angles[p] -= config.learning_rate * grad[p];
            }
        } else {
            Rng shuffle_rng = rng.split(static_cast<std::uint64_t>(epoch) + 1);
            std::vector<std::size_t> order(data.size());
            std::iota(order.begin(), order.end(), std::size_t{0});
            for (std::size_t i = order.size(); i > 1; --i) {
                std::swap(order[i - 1], order[shuffle_rng.bounded(i)]);
            }
            for (std::size_t start = 0; start < order.size();
                 start += static_cast<std::size_t>(config.batch_size)) {
                const std::size_t stop = std::min(
                    order.size(), start + static_cast<std::size_t>(config.batch_size));
                LabeledDataset batch;
                for (std::size_t i = start; i < stop; ++i) {
                    batch.inputs.push_back(data.inputs[order[i]]);
                    batch.labels.push_back(data.labels[order[i]]);
                }
                const std::vector<double> grad = parameter_shift_gradient(params, batch);
                for (std::size_t p = 0; p < grad.size(); ++p) {
                    params.angles[p] -= config.learning_rate * grad[p];
                }
            }
        }
        const double loss = mse_loss(params, data);
        if (!std::isfinite(loss)) {
            throw std::runtime_error(fmt::format("train: loss diverged at epoch {}", epoch));
        }
        result.loss_history.push_back(loss);
    }
    result.params = std::move(params);
    return result;
}

double evaluate_accuracy(const ClassifierParams& params, const LabeledDataset& data) {
    data.validate();
    if (data.size() == 0) throw std::invalid_argument("evaluate_accuracy: empty dataset");
    Evaluator eval(params);
    long long correct = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int pred = eval.predict(data.inputs[i]) > 0.5 ? 1 : 0;
        correct += (pred == data.labels[i]);
    }
    return static_cast<double>(correct) / static_cast<double>(data.size());
}

void save_params_csv(const ClassifierParams& params, const std::string& path) {
    params.validate();
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "layer,qubit,axis,angle\n";
    for (int l = 0; l < params.num_layers; ++l) {
        for (int q = 0; q < params.num_qubits; ++q) {
            for (int a = 0; a < 3; ++a) {
                f << fmt::format("{},{},{},{:.17g}\n", l, q, a, params.angle(l, q, a));
            }
        }
    }
    std::ofstream meta(path + ".meta");
    if (!meta) throw std::runtime_error("cannot open for writing: " + path + ".meta");
    meta << "num_qubits,num_layers,output_qubit,entangling_range\n";
    meta << fmt::format("{},{},{},{}\n", params.num_qubits, params.num_layers,
                        params.output_qubit, params.entangling_range);
}

ClassifierParams load_params_csv(const std::string& path) {
    std::ifstream meta(path + ".meta");
    if (!meta) throw std::runtime_error("cannot open: " + path + ".meta");
    std::string line;
    std::getline(meta, line); // header
    if (!std::getline(meta, line)) throw std::runtime_error("empty meta file: " + path);
    ClassifierParams params;
    {
        std::istringstream ss(line);
        char comma;
        ss >> params.num_qubits >> comma >> params.num_layers >> comma >>
            params.output_qubit >> comma >> params.entangling_range;
        if (!ss) throw std::runtime_error("malformed meta file: " + path);
    }
    params.angles.assign(
        static_cast<std::size_t>(params.num_layers) * params.num_qubits * 3, 0.0);

    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    std::getline(f, line); // header
    while (std::getline(f, line)) {
        if (line.empty()) continue;
        std::istringstream ss(line);
        int l, q, a;
        char comma;
        double angle;
        ss >> l >> comma >> q >> comma >> a >> comma >> angle;
        if (!ss) throw std::runtime_error("malformed params row: " + line);
        params.angle(l, q, a) = angle;
    }
    params.validate();
    return params;
}

} // namespace qrs
