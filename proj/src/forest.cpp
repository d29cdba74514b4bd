#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fspesoa/classifiers.hpp"
#include "fspesoa/rng.hpp"

namespace fspesoa {

namespace {

struct TreeBuilder {
    const Matrix& features;
    const std::vector<int>& labels;
    std::size_t num_classes;
    std::size_t candidates_per_split;
    std::mt19937_64& rng;
    DecisionTree tree;

    int majority_class(std::span<const std::size_t> rows) const {
        std::vector<std::size_t> counts(num_classes, 0);
        for (std::size_t r : rows) ++counts[static_cast<std::size_t>(labels[r])];
        std::size_t best = 0;
        for (std::size_t c = 1; c < num_classes; ++c) {
            if (counts[c] > counts[best]) best = c;
        }
        return static_cast<int>(best);
    }

    bool is_pure(std::span<const std::size_t> rows) const {
        for (std::size_t r : rows) {
            if (labels[r] != labels[rows.front()]) return false;
        }
        return true;
    }

    int make_leaf(std::span<const std::size_t> rows) {
        TreeNode node;
        node.leaf_class = majority_class(rows);
        tree.nodes.push_back(node);
        return static_cast<int>(tree.nodes.size() - 1);
    }

    int build(std::vector<std::size_t> rows) {
        if (rows.size() < 2 || is_pure(rows)) return make_leaf(rows);

        // Candidate features: a random subset, scanned in ascending order so
        // equal-impurity ties resolve deterministically.
        auto candidates = sample_indices(features.cols(), candidates_per_split,
                                         /*with_replacement=*/false, rng);
        std::sort(candidates.begin(), candidates.end());

        double best_impurity = std::numeric_limits<double>::infinity();
        std::size_t best_feature = 0;
        double best_threshold = 0.0;

        std::vector<double> values(rows.size());
        std::vector<std::size_t> left_counts(num_classes), right_counts(num_classes);
        for (std::size_t feature : candidates) {
            for (std::size_t i = 0; i < rows.size(); ++i) values[i] = features(rows[i], feature);
            std::sort(values.begin(), values.end());
            values.erase(std::unique(values.begin(), values.end()), values.end());
            for (std::size_t i = 0; i + 1 < values.size(); ++i) {
                const double threshold = values[i] + (values[i + 1] - values[i]) / 2.0;
                std::fill(left_counts.begin(), left_counts.end(), 0);
                std::fill(right_counts.begin(), right_counts.end(), 0);
                for (std::size_t r : rows) {
                    auto& side = features(r, feature) <= threshold ? left_counts : right_counts;
                    ++side[static_cast<std::size_t>(labels[r])];
                }
                const auto left_total = static_cast<double>(
                    std::accumulate(left_counts.begin(), left_counts.end(), std::size_t{0}));
                const auto right_total = static_cast<double>(rows.size()) - left_total;
                const double weighted =
                    (left_total * gini_impurity(left_counts) + right_total * gini_impurity(right_counts)) /
                    static_cast<double>(rows.size());
                if (weighted < best_impurity) {
                    best_impurity = weighted;
                    best_feature = feature;
                    best_threshold = threshold;
                }
            }
        }

        if (!std::isfinite(best_impurity)) {
            // Every candidate feature was constant on this node's samples.
            return make_leaf(rows);
        }

        std::vector<std::size_t> left_rows, right_rows;
        for (std::size_t r : rows) {
            (features(r, best_feature) <= best_threshold ? left_rows : right_rows).push_back(r);
        }

        TreeNode node;
        node.feature = static_cast<int>(best_feature);
        node.threshold = best_threshold;
        tree.nodes.push_back(node);
        const auto index = static_cast<int>(tree.nodes.size() - 1);
        const int left = build(std::move(left_rows));
        const int right = build(std::move(right_rows));
        tree.nodes[static_cast<std::size_t>(index)].left = left;
        tree.nodes[static_cast<std::size_t>(index)].right = right;
        return index;
    }
};

int tree_predict(const DecisionTree& tree, std::span<const double> row) {
    std::size_t node = 0;
    while (!tree.nodes[node].is_leaf()) {
        const auto& n = tree.nodes[node];
        node = static_cast<std::size_t>(row[static_cast<std::size_t>(n.feature)] <= n.threshold
                                            ? n.left
                                            : n.right);
    }
    return tree.nodes[node].leaf_class;
}

}  // namespace

double gini_impurity(std::span<const std::size_t> class_counts) {
    std::size_t total = 0;
    for (std::size_t c : class_counts) total += c;
    if (total == 0) return 0.0;
    double sum_sq = 0.0;
    for (std::size_t c : class_counts) {
        const double p = static_cast<double>(c) / static_cast<double>(total);
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

ForestModel rf_fit(const Matrix& train, const std::vector<int>& labels, const ForestConfig& config) {
    if (train.rows() < 2) throw std::invalid_argument("rf_fit: need at least 2 training rows");
    if (labels.size() != train.rows()) throw std::invalid_argument("rf_fit: label count mismatch");
    if (config.num_trees < 1) throw std::invalid_argument("rf_fit: need at least 1 tree");

    ForestModel model;
    model.num_features = train.cols();
    model.num_classes = 1 + *std::max_element(labels.begin(), labels.end());
    model.config = config;

    const auto candidates = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(train.cols())))));

    model.trees.reserve(config.num_trees);
    for (std::size_t t = 0; t < config.num_trees; ++t) {
        // Each tree owns its own RNG stream so trees can be grown in any order.
        std::mt19937_64 rng(mix_seed(config.seed, t + 1));
        auto bootstrap = sample_indices(train.rows(), train.rows(), /*with_replacement=*/true, rng);
        TreeBuilder builder{train, labels, static_cast<std::size_t>(model.num_classes), candidates,
                            rng, {}};
        builder.build(std::move(bootstrap));
        model.trees.push_back(std::move(builder.tree));
    }
    return model;
}

std::vector<int> rf_predict(const ForestModel& model, const Matrix& test) {
    if (test.cols() != model.num_features) {
        throw std::invalid_argument("rf_predict: feature count mismatch");
    }
    std::vector<int> predictions;
    predictions.reserve(test.rows());
    std::vector<std::size_t> votes(static_cast<std::size_t>(model.num_classes));
    for (std::size_t r = 0; r < test.rows(); ++r) {
        std::fill(votes.begin(), votes.end(), 0);
        for (const auto& tree : model.trees) {
            ++votes[static_cast<std::size_t>(tree_predict(tree, test.row(r)))];
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < votes.size(); ++c) {
            if (votes[c] > votes[best]) best = c;
        }
        predictions.push_back(static_cast<int>(best));
    }
    return predictions;
}

void to_json(nlohmann::json& j, const ForestModel& model) {
    nlohmann::json trees = nlohmann::json::array();
    for (const auto& tree : model.trees) {
        nlohmann::json nodes = nlohmann::json::array();
        for (const auto& n : tree.nodes) {
            nodes.push_back({n.feature, n.threshold, n.left, n.right, n.leaf_class});
        }
        trees.push_back(std::move(nodes));
    }
    j = nlohmann::json{{"type", "forest"},
                       {"num_features", model.num_features},
                       {"num_classes", model.num_classes},
                       {"num_trees", model.config.num_trees},
                       {"seed", model.config.seed},
                       {"trees", trees}};
}

void from_json(const nlohmann::json& j, ForestModel& model) {
    model.num_features = j.at("num_features").get<std::size_t>();
    model.num_classes = j.at("num_classes").get<int>();
    model.config.num_trees = j.at("num_trees").get<std::size_t>();
    model.config.seed = j.at("seed").get<std::uint64_t>();
    model.trees.clear();
    for (const auto& tree_json : j.at("trees")) {
        DecisionTree tree;
        for (const auto& n : tree_json) {
            tree.nodes.push_back({n.at(0).get<int>(), n.at(1).get<double>(), n.at(2).get<int>(),
                                  n.at(3).get<int>(), n.at(4).get<int>()});
        }
        model.trees.push_back(std::move(tree));
    }
}

}  // namespace fspesoa
