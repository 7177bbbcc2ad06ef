#include "qrs/preprocess.hpp"

#include "qrs/rng.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace qrs {

namespace {

std::vector<std::string> split(const std::string& line, char delim) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, delim)) out.push_back(field);
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, const std::string& context) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw std::runtime_error("malformed number '" + tok + "' " + context);
    }
}

} // namespace

void BowConfig::validate() const {
    if (window_size < 1) throw std::invalid_argument("BowConfig: window_size must be >= 1");
    if (word_size < 1 || word_size > window_size) {
        throw std::invalid_argument("BowConfig: need 1 <= word_size <= window_size");
    }
    if (n_bins != 2) {
        throw std::invalid_argument("BowConfig: only n_bins = 2 (binary words) is supported");
    }
}

std::vector<RawSeries> load_ucr(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open UCR file: " + path);

    std::vector<std::pair<double, std::vector<double>>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const char delim = t.find('\t') != std::string::npos ? '\t' : ',';
        const std::vector<std::string> fields = split(t, delim);
        if (fields.size() < 2) {
            throw std::runtime_error(
                fmt::format("{}:{}: expected label and values", path, lineno));
        }
        const std::string ctx = fmt::format("at {}:{}", path, lineno);
        std::vector<double> values;
        values.reserve(fields.size() - 1);
        const double label = parse_double(trim(fields[0]), ctx);
        for (std::size_t i = 1; i < fields.size(); ++i) {
            values.push_back(parse_double(trim(fields[i]), ctx));
        }
        rows.emplace_back(label, std::move(values));
    }
    if (rows.empty()) throw std::runtime_error("empty UCR file: " + path);

    std::set<double> distinct;
    for (const auto& [label, values] : rows) distinct.insert(label);
    if (distinct.size() != 2) {
        throw std::runtime_error(fmt::format("{}: expected exactly 2 classes, found {}",
                                             path, distinct.size()));
    }
    std::map<double, int> remap;
    int next = 0;
    for (double raw : distinct) remap[raw] = next++;

    std::vector<RawSeries> out;
    out.reserve(rows.size());
    for (auto& [label, values] : rows) {
        out.push_back({remap[label], std::move(values)});
    }
    return out;
}

Bits bow_transform(const std::vector<double>& values, const BowConfig& config) {
    config.validate();
    std::vector<double> v = values;
    if (config.truncate_to_first_half) {
        v.resize(v.size() / 2);
    }
    const int nwin = static_cast<int>(v.size()) / config.window_size;
    if (nwin < 1) {
        throw std::runtime_error(fmt::format(
            "bow_transform: series of effective length {} is shorter than one window ({})",
            v.size(), config.window_size));
    }

    Bits bits;
    bits.reserve(static_cast<std::size_t>(nwin) * config.word_size);
    for (int w = 0; w < nwin; ++w) {
        const auto begin = v.begin() + static_cast<std::ptrdiff_t>(w) * config.window_size;
        std::vector<double> win(begin, begin + config.window_size);
        const double mean =
            std::accumulate(win.begin(), win.end(), 0.0) / config.window_size;
        double var = 0.0;
        for (double x : win) var += (x - mean) * (x - mean);
        const double sd = std::sqrt(var / config.window_size);
        if (sd == 0.0) {
            bits.insert(bits.end(), config.word_size, 0);
            continue;
        }
        for (double& x : win) x = (x - mean) / sd;

        // near-equal contiguous segments, longer segments first
        int pos = 0;
        for (int s = 0; s < config.word_size; ++s) {
            const int len = (config.window_size + config.word_size - 1 - s) / config.word_size;
            double seg = 0.0;
            for (int i = 0; i < len; ++i) seg += win[pos + i];
            seg /= len;
            bits.push_back(seg > 0.0 ? 1 : 0);
            pos += len;
        }
    }
    return bits;
}

LabeledDataset bow_dataset(const std::vector<RawSeries>& series, const BowConfig& config) {
    LabeledDataset out;
    out.inputs.reserve(series.size());
    out.labels.reserve(series.size());
    for (const RawSeries& s : series) {
        out.inputs.push_back(bow_transform(s.values, config));
        out.labels.push_back(s.label);
    }
    out.validate();
    return out;
}

namespace {

double median_of(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

} // namespace

IrisSplit iris_binarize(const std::string& csv_path, std::uint64_t seed) {
    std::ifstream f(csv_path);
    if (!f) throw std::runtime_error("cannot open iris table: " + csv_path);

    struct Row {
        std::array<double, 3> feat;
        int label;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty()) continue;
        const std::vector<std::string> fields = split(t, ',');
        if (fields.size() != 5) {
            throw std::runtime_error(
                fmt::format("{}:{}: expected 5 columns", csv_path, lineno));
        }
        std::string species = trim(fields[4]);
        std::transform(species.begin(), species.end(), species.begin(), ::tolower);
        if (lineno == 1 && species.find("species") != std::string::npos) continue; // header
        if (species.find("versicolor") != std::string::npos) continue;
        int label;
        if (species.find("setosa") != std::string::npos) {
            label = 1;
        } else if (species.find("virginica") != std::string::npos) {
            label = 0;
        } else {
            throw std::runtime_error(
                fmt::format("{}:{}: unknown species '{}'", csv_path, lineno, species));
        }
        const std::string ctx = fmt::format("at {}:{}", csv_path, lineno);
        // keep sepal length, sepal width, petal length; drop petal width
        Row r;
        for (int i = 0; i < 3; ++i) r.feat[i] = parse_double(trim(fields[i]), ctx);
        r.label = label;
        double norm = 0.0;
        for (double x : r.feat) norm += x * x;
        norm = std::sqrt(norm);
        if (norm == 0.0) throw std::runtime_error("zero-norm iris row " + ctx);
        for (double& x : r.feat) x /= norm;
        rows.push_back(r);
    }
    if (rows.empty()) throw std::runtime_error("no usable rows in " + csv_path);

    // stratified 60/40 split before median computation
    Rng rng(seed);
    std::vector<std::size_t> train_idx, test_idx;
    for (int cls = 0; cls <= 1; ++cls) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].label == cls) idx.push_back(i);
        }
        Rng cls_rng = rng.split(static_cast<std::uint64_t>(cls));
        for (std::size_t i = idx.size(); i > 1; --i) {
            std::swap(idx[i - 1], idx[cls_rng.bounded(i)]);
        }
        const std::size_t ntrain = (idx.size() * 6) / 10;
        train_idx.insert(train_idx.end(), idx.begin(), idx.begin() + ntrain);
        test_idx.insert(test_idx.end(), idx.begin() + ntrain, idx.end());
    }
    std::sort(train_idx.begin(), train_idx.end());
    std::sort(test_idx.begin(), test_idx.end());

    std::array<double, 3> medians;
    for (int fidx = 0; fidx < 3; ++fidx) {
        std::vector<double> vals;
        vals.reserve(train_idx.size());
        for (std::size_t i : train_idx) vals.push_back(rows[i].feat[fidx]);
        medians[fidx] = median_of(std::move(vals));
    }

    auto binarize = [&](const std::vector<std::size_t>& idx) {
        LabeledDataset d;
        for (std::size_t i : idx) {
            Bits b(3);
            for (int fidx = 0; fidx < 3; ++fidx) {
                b[fidx] = rows[i].feat[fidx] > medians[fidx] ? 1 : 0;
            }
            d.inputs.push_back(std::move(b));
            d.labels.push_back(rows[i].label);
        }
        d.validate();
        return d;
    };
    return {binarize(train_idx), binarize(test_idx)};
}

void save_bits_csv(const LabeledDataset& data, const std::string& path) {
    data.validate();
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    f << "bits,label\n";
    for (std::size_t i = 0; i < data.size(); ++i) {
        f << bits_to_string(data.inputs[i]) << ',' << data.labels[i] << '\n';
    }
}

LabeledDataset load_bits_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open: " + path);
    LabeledDataset d;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || (lineno == 1 && t.rfind("bits", 0) == 0)) continue;
        const std::vector<std::string> fields = split(t, ',');
        if (fields.size() != 2) {
            throw std::runtime_error(fmt::format("{}:{}: expected bits,label", path, lineno));
        }
        d.inputs.push_back(bits_from_string(trim(fields[0])));
        d.labels.push_back(static_cast<int>(parse_double(trim(fields[1]),
                                                         fmt::format("at {}:{}", path, lineno))));
    }
    d.validate();
    return d;
}

} // namespace qrs
