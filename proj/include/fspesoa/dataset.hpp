#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "fspesoa/matrix.hpp"

namespace fspesoa {

/// A loaded benchmark table: numeric features plus dense integer labels.
/// Labels are mapped to 0..C-1 in first-appearance order; class_names
/// records the mapping back to the original label strings.
struct Dataset {
    Matrix features;
    std::vector<int> labels;
    std::vector<std::string> feature_names;
    std::vector<std::string> class_names;
    std::string name;

    std::size_t num_samples() const { return features.rows(); }
    std::size_t num_features() const { return features.cols(); }
    int num_classes() const { return static_cast<int>(class_names.size()); }
};

/// Columnwise extrema of the rows the scaler was fitted on.
struct ScalingParams {
    std::vector<double> minimum;
    std::vector<double> maximum;
};

/// Disjoint train/test index partition; indices are sorted ascending.
struct Split {
    std::vector<std::size_t> train_indices;
    std::vector<std::size_t> test_indices;
    std::uint64_t seed = 0;
};

/// Parse a canonical CSV (UTF-8, comma separated, header row). The label
/// column is selected by name, or the last column when label_column is empty.
/// Feature cells must parse as finite reals; labels may be any string.
Dataset load_csv(const std::filesystem::path& path, const std::string& label_column = "");

/// Write a Dataset back to canonical CSV. Feature values are serialized with
/// shortest round-trip formatting, so load(save(d)) reproduces the matrix
/// bit for bit.
void save_csv(const Dataset& dataset, const std::filesystem::path& path);

/// Columnwise min/max of the given rows (typically the training partition).
ScalingParams fit_minmax(const Matrix& train_features);

/// Map every cell to (x - min) / (max - min). Constant columns map to 0.
/// Values outside the fitted range are not clamped.
Matrix apply_minmax(const ScalingParams& params, const Matrix& features);

/// Stratified 80:20 split: per class, floor(0.8 * count) samples go to the
/// train side after a seeded shuffle. Every class needs at least 2 samples.
Split split_80_20(const Dataset& dataset, std::uint64_t seed);

}  // namespace fspesoa
