#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fspesoa/matrix.hpp"

namespace fspesoa {

// All three classifiers break every tie toward the lower index: lower
// training row for equal distances, lower class for equal votes or scores.

struct KnnModel {
    Matrix train;
    std::vector<int> labels;
    std::size_t k = 5;
};

KnnModel knn_fit(const Matrix& train, const std::vector<int>& labels, std::size_t k = 5);
std::vector<int> knn_predict(const KnnModel& model, const Matrix& test);

/// Internal nodes carry (feature, threshold); leaves carry a class.
struct TreeNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int leaf_class = -1;

    bool is_leaf() const { return feature < 0; }
    friend bool operator==(const TreeNode&, const TreeNode&) = default;
};

struct DecisionTree {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    friend bool operator==(const DecisionTree&, const DecisionTree&) = default;
};

struct ForestConfig {
    std::size_t num_trees = 100;
    std::uint64_t seed = 0;
};

struct ForestModel {
    std::vector<DecisionTree> trees;
    std::size_t num_features = 0;
    int num_classes = 0;
    ForestConfig config;
};

/// Gini impurity 1 - sum(p_c^2) of a class-count histogram.
double gini_impurity(std::span<const std::size_t> class_counts);

/// Bagged CART trees: bootstrap per tree, floor(sqrt(m)) random split
/// candidates per node, midpoint thresholds, grown until pure or < 2 samples.
ForestModel rf_fit(const Matrix& train, const std::vector<int>& labels, const ForestConfig& config);
std::vector<int> rf_predict(const ForestModel& model, const Matrix& test);

struct SvmConfig {
    double lambda = 1e-3;
    std::size_t epochs = 200;
    std::uint64_t seed = 0;
};

struct SvmModel {
    Matrix weights;  // one row per class
    std::vector<double> bias;
    SvmConfig config;
};

/// One-vs-rest linear SVMs trained by stochastic subgradient descent on the
/// regularized hinge loss with step size 1/(lambda * t).
SvmModel svm_fit(const Matrix& train, const std::vector<int>& labels, const SvmConfig& config);
std::vector<int> svm_predict(const SvmModel& model, const Matrix& test);

/// Summed one-vs-rest objective: lambda/2 ||w_c||^2 + mean hinge loss per class.
double svm_objective(const SvmModel& model, const Matrix& train, const std::vector<int>& labels);

void to_json(nlohmann::json& j, const KnnModel& model);
void from_json(const nlohmann::json& j, KnnModel& model);
void to_json(nlohmann::json& j, const ForestModel& model);
void from_json(const nlohmann::json& j, ForestModel& model);
void to_json(nlohmann::json& j, const SvmModel& model);
void from_json(const nlohmann::json& j, SvmModel& model);

}  // namespace fspesoa
