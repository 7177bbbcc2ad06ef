// Batch experiment runner: train / certify / distribution / bow subcommands.
// Every run writes a manifest with the fully resolved configuration so that
// rerunning it reproduces the outputs byte for byte.

#include "qrs/certify.hpp"
#include "qrs/preprocess.hpp"
#include "qrs/qnn.hpp"
#include "qrs/quadro.hpp"
#include "qrs/smoothing.hpp"
#include "qrs/stateprep.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace qrs;

namespace {

constexpr const char* kVersion = "qrsmooth 0.1.0";
constexpr int kExitConfig = 2;
constexpr int kExitData = 3;

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << content;
}

void write_manifest(const fs::path& path, const std::string& command, const json& args) {
    json m;
    m["tool"] = kVersion;
    m["command"] = command;
    m["args"] = args;
    write_file(path, m.dump(2) + "\n");
}

struct DatasetPair {
    LabeledDataset train;
    LabeledDataset test;
};

DatasetPair load_named_dataset(const std::string& name, const std::string& data_dir,
                               std::uint64_t seed) {
    if (name == "iris") {
        const IrisSplit split = iris_binarize(data_dir + "/iris.csv", seed);
        return {split.train, split.test};
    }
    if (name == "gunpoint") {
        // real UCR files take precedence when present; otherwise the bundled
        // synthetic stand-in (see tools/make_synthetic_gunpoint.py)
        std::string train_path = data_dir + "/GunPoint_TRAIN.tsv";
        std::string test_path = data_dir + "/GunPoint_TEST.tsv";
        if (!fs::exists(train_path)) {
            train_path = data_dir + "/gunpoint_synth_TRAIN.tsv";
            test_path = data_dir + "/gunpoint_synth_TEST.tsv";
            std::cerr << "note: using the bundled synthetic gun-point files\n";
        }
        const BowConfig bow;
        return {bow_dataset(load_ucr(train_path), bow),
                bow_dataset(load_ucr(test_path), bow)};
    }
    throw CLI::ValidationError("--dataset", "unknown dataset: " + name);
}

int cmd_train(const std::string& dataset, const std::string& data_dir, int qubits,
              int layers, double lr, int epochs, std::uint64_t seed,
              const std::string& out) {
    const DatasetPair data = load_named_dataset(dataset, data_dir, seed);
    if (qubits == 0) qubits = static_cast<int>(data.train.inputs[0].size());
    if (layers == 0) layers = dataset == "iris" ? 2 : 50;
    if (static_cast<int>(data.train.inputs[0].size()) != qubits) {
        throw std::runtime_error(fmt::format("dataset bit width {} != --qubits {}",
                                             data.train.inputs[0].size(), qubits));
    }

    TrainConfig cfg;
    cfg.learning_rate = lr;
    cfg.epochs = epochs;
    cfg.seed = seed;
    const TrainResult result = train(cfg, data.train, qubits, layers);

    save_params_csv(result.params, out);
    std::string loss_csv = "epoch,loss\n";
    for (std::size_t e = 0; e < result.loss_history.size(); ++e) {
        loss_csv += fmt::format("{},{:.17g}\n", e, result.loss_history[e]);
    }
    const fs::path out_path = fs::absolute(out);
    write_file(out_path.parent_path() / (out_path.stem().string() + "_loss.csv"),
               loss_csv);

    const double train_acc = evaluate_accuracy(result.params, data.train);
    const double test_acc = evaluate_accuracy(result.params, data.test);
    fmt::print("train accuracy {:.4f}  test accuracy {:.4f}\n", train_acc, test_acc);

    write_manifest(out_path.parent_path() / (out_path.stem().string() + "_manifest.json"),
                   "train",
                   json{{"dataset", dataset},
                        {"data_dir", data_dir},
                        {"qubits", qubits},
                        {"layers", layers},
                        {"learning_rate", lr},
                        {"epochs", epochs},
                        {"seed", seed},
                        {"out", out},
                        {"train_accuracy", train_acc},
                        {"test_accuracy", test_acc}});
    return 0;
}

int cmd_certify(const std::string& path_kind, const std::string& dist_name, double sigma,
                int k, long long shots, int m, int reps, int shots_per_bit, double alpha,
                const std::string& params_path, const std::string& dataset,
                const std::string& data_dir, int max_samples, std::uint64_t seed,
                const std::string& out_dir) {
    const ClassifierParams params = load_params_csv(params_path);
    const DatasetPair data = load_named_dataset(dataset, data_dir, seed);
    const int n = params.num_qubits;
    if (static_cast<int>(data.test.inputs[0].size()) != n) {
        throw std::runtime_error("params width does not match dataset bit width");
    }
    const NoiseModel model = noise_model_from_string(dist_name);
    const HammingNoiseSpec spec{n, k, sigma};
    spec.validate();

    const std::size_t count = max_samples > 0
                                  ? std::min<std::size_t>(max_samples, data.test.size())
                                  : data.test.size();

    std::vector<CertificationRecord> records;
    records.reserve(count);
    std::string trace_csv = "sample_index,repetition,j,ones,shots,bit\n";
    long long total_calls = 0;
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t sample_seed = derive_seed(seed, i);
        CertificationRecord rec;
        if (path_kind == "rs") {
            rec = rs_certify_sample(data.test.inputs[i], data.test.labels[i], spec,
                                    params, shots, alpha, sample_seed, model);
        } else if (path_kind == "quadro") {
            QaeConfig cfg;
            cfg.m = m;
            cfg.shots_per_bit = shots_per_bit;
            cfg.repetitions = reps;
            cfg.alpha = alpha;
            cfg.seed = sample_seed;
            std::vector<PhaseEstimate> runs;
            rec = quadro_certify_sample(data.test.inputs[i], data.test.labels[i], spec,
                                        params, cfg, model, &runs);
            for (std::size_t r = 0; r < runs.size(); ++r) {
                for (const IterationTrace& it : runs[r].iterations) {
                    trace_csv += fmt::format("{},{},{},{},{},{}\n", i, r, it.j, it.ones,
                                             it.shots, it.bit);
                }
            }
        } else {
            throw CLI::ValidationError("--path", "expected rs or quadro");
        }
        rec.sample_index = static_cast<int>(i);
        total_calls += rec.oracle_calls;
        records.push_back(rec);
    }

    std::vector<int> radii(n + 1);
    for (int r = 0; r <= n; ++r) radii[r] = r;
    const auto curve = certified_accuracy_curve(records, radii);

    const fs::path dir(out_dir);
    write_file(dir / "records.csv", records_to_csv(records));
    write_file(dir / "curve.csv",
               curve_to_csv(curve, path_kind,
                            total_calls / static_cast<long long>(count)));
    if (path_kind == "quadro") {
        write_file(dir / "trace.csv", trace_csv);
    }
    write_manifest(dir / "manifest.json", "certify",
                   json{{"path", path_kind},
                        {"dist", dist_name},
                        {"sigma", sigma},
                        {"k", k},
                        {"shots", shots},
                        {"m", m},
                        {"reps", reps},
                        {"shots_per_bit", shots_per_bit},
                        {"alpha", alpha},
                        {"params", params_path},
                        {"dataset", dataset},
                        {"data_dir", data_dir},
                        {"max_samples", max_samples},
                        {"seed", seed},
                        {"out_dir", out_dir}});
    fmt::print("wrote {} records to {}\n", records.size(),
               (dir / "records.csv").string());
    return 0;
}

int cmd_distribution(const std::string& method, const std::string& x_str, double sigma,
                     int k, const std::string& out) {
    const Bits x = bits_from_string(x_str);
    const int n = static_cast<int>(x.size());
    std::vector<int> data(n);
    for (int i = 0; i < n; ++i) data[i] = i;
    DiscreteDistribution dist;
    if (method == "target") {
        dist = target_distribution({n, k, sigma}, x);
    } else if (method == "hamming-circuit") {
        dist = induced_distribution(hamming_prep_circuit({n, k, sigma}, x), data);
    } else if (method == "uniform-circuit") {
        dist = induced_distribution(uniform_prep_circuit(n, sigma, x), data);
    } else if (method == "mottonen") {
        dist = induced_distribution(
            mottonen_circuit(target_distribution({n, k, sigma}, x)), data);
    } else {
        throw CLI::ValidationError("--method", "unknown method: " + method);
    }
    write_distribution_csv(dist, out);
    const fs::path out_path = fs::absolute(out);
    write_manifest(out_path.parent_path() / (out_path.stem().string() + "_manifest.json"),
                   "distribution",
                   json{{"method", method},
                        {"x", x_str},
                        {"sigma", sigma},
                        {"k", k},
                        {"out", out}});
    fmt::print("wrote {}\n", out);
    return 0;
}

int cmd_bow(const std::string& in, int window, int word, int bins, bool full_series,
            const std::string& out) {
    BowConfig cfg;
    cfg.window_size = window;
    cfg.word_size = word;
    cfg.n_bins = bins;
    cfg.truncate_to_first_half = !full_series;
    const LabeledDataset ds = bow_dataset(load_ucr(in), cfg);
    save_bits_csv(ds, out);
    const fs::path out_path = fs::absolute(out);
    write_manifest(out_path.parent_path() / (out_path.stem().string() + "_manifest.json"),
                   "bow",
                   json{{"in", in},
                        {"window", window},
                        {"word", word},
                        {"bins", bins},
                        {"full_series", full_series},
                        {"out", out}});
    fmt::print("wrote {} rows to {}\n", ds.size(), out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Certified robustness experiments for bitstring classifiers:\n"
                 "randomized smoothing with Hamming-constrained noise on an exact\n"
                 "statevector simulator, classically sampled or amplitude-estimated."};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    auto* tr = app.add_subcommand("train", "Train the entangling-layer classifier");
    std::string tr_dataset = "iris", tr_data_dir = "data", tr_out = "params.csv";
    int tr_qubits = 0, tr_layers = 0, tr_epochs = 200;
    double tr_lr = 0.1;
    std::uint64_t tr_seed = 0;
    tr->add_option("--dataset", tr_dataset, "iris | gunpoint")->capture_default_str();
    tr->add_option("--data-dir", tr_data_dir, "directory with input data files")
        ->capture_default_str();
    tr->add_option("--qubits", tr_qubits, "qubit count (0 = dataset bit width)")
        ->capture_default_str();
    tr->add_option("--layers", tr_layers, "entangling layers (0 = dataset default)")
        ->capture_default_str();
    tr->add_option("--lr", tr_lr, "learning rate")->capture_default_str();
    tr->add_option("--epochs", tr_epochs, "training epochs")->capture_default_str();
    tr->add_option("--seed", tr_seed, "run seed")->capture_default_str();
    tr->add_option("--out", tr_out, "output params CSV")->capture_default_str();

    auto* ce = app.add_subcommand("certify", "Certify test samples (rs or quadro path)");
    std::string ce_path = "rs", ce_dist = "hamming", ce_params = "params.csv";
    std::string ce_dataset = "iris", ce_data_dir = "data", ce_out_dir = "certify_out";
    double ce_sigma = 0.5, ce_alpha = 0.1;
    int ce_k = 1, ce_m = 6, ce_reps = 5, ce_spb = 0, ce_max = 0;
    long long ce_shots = 2500;
    std::uint64_t ce_seed = 0;
    ce->add_option("--path", ce_path, "rs | quadro")->capture_default_str();
    ce->add_option("--dist", ce_dist, "hamming | uniform")->capture_default_str();
    ce->add_option("--sigma", ce_sigma, "noise strength")->capture_default_str();
    ce->add_option("--k", ce_k, "max Hamming distance of the noise")
        ->capture_default_str();
    ce->add_option("--shots", ce_shots, "rs path: perturbation samples N")
        ->capture_default_str();
    ce->add_option("--m", ce_m, "quadro path: phase bits")->capture_default_str();
    ce->add_option("--reps", ce_reps, "quadro path: median repetitions (odd)")
        ->capture_default_str();
    ce->add_option("--shots-per-bit", ce_spb,
                   "quadro path: majority shots per iteration (0 = round(sqrt(N)))")
        ->capture_default_str();
    ce->add_option("--alpha", ce_alpha, "confidence level")->capture_default_str();
    ce->add_option("--params", ce_params, "trained params CSV")->capture_default_str();
    ce->add_option("--dataset", ce_dataset, "iris | gunpoint")->capture_default_str();
    ce->add_option("--data-dir", ce_data_dir, "directory with input data files")
        ->capture_default_str();
    ce->add_option("--max-samples", ce_max,
                   "certify only the first K test samples (0 = all)")
        ->capture_default_str();
    ce->add_option("--seed", ce_seed, "run seed")->capture_default_str();
    ce->add_option("--out-dir", ce_out_dir, "output directory")->capture_default_str();

    auto* di = app.add_subcommand("distribution", "Emit a smoothing distribution as CSV");
    std::string di_method = "target", di_x = "011", di_out = "dist.csv";
    double di_sigma = 1.0;
    int di_k = 1;
    di->add_option("--method", di_method,
                   "target | hamming-circuit | uniform-circuit | mottonen")
        ->capture_default_str();
    di->add_option("--x", di_x, "center bitstring")->capture_default_str();
    di->add_option("--sigma", di_sigma, "noise strength")->capture_default_str();
    di->add_option("--k", di_k, "max Hamming distance")->capture_default_str();
    di->add_option("--out", di_out, "output CSV")->capture_default_str();

    auto* bo = app.add_subcommand("bow", "Bag-of-Words binarization of a UCR file");
    std::string bo_in, bo_out = "bits.csv";
    int bo_window = 15, bo_word = 2, bo_bins = 2;
    bool bo_full = false;
    bo->add_option("--in", bo_in, "UCR text file (label + values per line)")->required();
    bo->add_option("--window", bo_window, "window size")->capture_default_str();
    bo->add_option("--word", bo_word, "word size (bits per window)")
        ->capture_default_str();
    bo->add_option("--bins", bo_bins, "bins per symbol (2 = binary)")
        ->capture_default_str();
    bo->add_flag("--full-series", bo_full, "use the whole series, not the first half");
    bo->add_option("--out", bo_out, "output CSV")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (tr->parsed()) {
            return cmd_train(tr_dataset, tr_data_dir, tr_qubits, tr_layers, tr_lr,
                             tr_epochs, tr_seed, tr_out);
        }
        if (ce->parsed()) {
            if (ce_spb == 0) {
                ce_spb = std::max(1, static_cast<int>(std::llround(std::sqrt(
                                         static_cast<double>(ce_shots)))));
            }
            return cmd_certify(ce_path, ce_dist, ce_sigma, ce_k, ce_shots, ce_m, ce_reps,
                               ce_spb, ce_alpha, ce_params, ce_dataset, ce_data_dir,
                               ce_max, ce_seed, ce_out_dir);
        }
        if (di->parsed()) {
            return cmd_distribution(di_method, di_x, di_sigma, di_k, di_out);
        }
        if (bo->parsed()) {
            return cmd_bow(bo_in, bo_window, bo_word, bo_bins, bo_full, bo_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitData;
    }
    return 0;
}
