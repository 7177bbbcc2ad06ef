#pragma once

#include "qrs/qnn.hpp"
#include "qrs/statevector.hpp"

#include <string>
#include <vector>

namespace qrs {

struct BowConfig {
    int window_size = 15;
    int word_size = 2;
    int n_bins = 2;
    bool truncate_to_first_half = true;

    void validate() const;
};

struct RawSeries {
    int label = 0;
    std::vector<double> values;
};

// One series per line: label, then delimiter-separated reals (tab or comma,
// autodetected). Raw labels are remapped to {0,1} by sorted order.
std::vector<RawSeries> load_ucr(const std::string& path);

// Window the (optionally halved) series, z-normalize each window, cut each
// window into word_size near-equal segments (longer first) and emit one sign
// bit per segment mean.
Bits bow_transform(const std::vector<double>& values, const BowConfig& config);
inline Bits bow_transform(const RawSeries& series, const BowConfig& config) {
    return bow_transform(series.values, config);
}

LabeledDataset bow_dataset(const std::vector<RawSeries>& series, const BowConfig& config);

struct IrisSplit {
    LabeledDataset train;
    LabeledDataset test;
};

// Standard 5-column Iris table -> versicolor dropped, petal width dropped,
// rows normalized to unit norm, stratified 60/40 split, then per-feature
// binarization against the training-split median (bit = 1 iff value > median).
IrisSplit iris_binarize(const std::string& csv_path, std::uint64_t seed);

void save_bits_csv(const LabeledDataset& data, const std::string& path);
LabeledDataset load_bits_csv(const std::string& path);

} // namespace qrs
