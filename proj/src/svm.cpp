#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fspesoa/classifiers.hpp"
#include "fspesoa/rng.hpp"

namespace fspesoa {

namespace {

double dot_row(std::span<const double> w, std::span<const double> x) {
    double sum = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * x[i];
    return sum;
}

}  // namespace

SvmModel svm_fit(const Matrix& train, const std::vector<int>& labels, const SvmConfig& config) {
    if (train.rows() == 0) throw std::invalid_argument("svm_fit: empty training set");
    if (labels.size() != train.rows()) throw std::invalid_argument("svm_fit: label count mismatch");
    if (!(config.lambda > 0.0)) throw std::invalid_argument("svm_fit: lambda must be > 0");
    if (config.epochs < 1) throw std::invalid_argument("svm_fit: need at least 1 epoch");

    const int num_classes = 1 + *std::max_element(labels.begin(), labels.end());
    if (num_classes < 2) throw std::invalid_argument("svm_fit: need at least 2 classes");

    const std::size_t n = train.rows();
    const std::size_t m = train.cols();

    SvmModel model;
    model.config = config;
    model.weights = Matrix(static_cast<std::size_t>(num_classes), m);
    model.bias.assign(static_cast<std::size_t>(num_classes), 0.0);

    std::vector<std::size_t> order(n);
    for (int c = 0; c < num_classes; ++c) {
        bool any_positive = false;
        for (int label : labels) any_positive |= (label == c);
        if (!any_positive) throw std::invalid_argument("svm_fit: class without positive examples");

        // Independent stream per binary problem; the first epoch's trajectory
        // is therefore identical regardless of the total epoch count.
        std::mt19937_64 rng(mix_seed(config.seed, static_cast<std::uint64_t>(c)));
        auto w = model.weights.row(static_cast<std::size_t>(c));
        double bias = 0.0;
        std::size_t t = 0;

        for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
            for (std::size_t i = 0; i < n; ++i) order[i] = i;
            shuffle(order, rng);
            for (std::size_t i : order) {
                ++t;
                const double step = 1.0 / (config.lambda * static_cast<double>(t));
                const double y = labels[i] == c ? 1.0 : -1.0;
                const auto x = train.row(i);
                const double margin = y * (dot_row(w, x) + bias);
                const double keep = 1.0 - step * config.lambda;
                if (margin < 1.0) {
                    for (std::size_t f = 0; f < m; ++f) w[f] = keep * w[f] + step * y * x[f];
                    bias += step * y;  // bias is not regularized
                } else {
                    for (std::size_t f = 0; f < m; ++f) w[f] *= keep;
                }
            }
        }
        model.bias[static_cast<std::size_t>(c)] = bias;
    }
    return model;
}

std::vector<int> svm_predict(const SvmModel& model, const Matrix& test) {
    if (test.cols() != model.weights.cols()) {
        throw std::invalid_argument("svm_predict: feature count mismatch");
    }
    std::vector<int> predictions;
    predictions.reserve(test.rows());
    for (std::size_t r = 0; r < test.rows(); ++r) {
        const auto x = test.row(r);
        std::size_t best = 0;
        double best_score = dot_row(model.weights.row(0), x) + model.bias[0];
        for (std::size_t c = 1; c < model.weights.rows(); ++c) {
            const double score = dot_row(model.weights.row(c), x) + model.bias[c];
            if (score > best_score) {
                best_score = score;
                best = c;
            }
        }
        predictions.push_back(static_cast<int>(best));
    }
    return predictions;
}

double svm_objective(const SvmModel& model, const Matrix& train, const std::vector<int>& labels) {
    if (labels.size() != train.rows()) throw std::invalid_argument("svm_objective: label count mismatch");
    double total = 0.0;
    for (std::size_t c = 0; c < model.weights.rows(); ++c) {
        const auto w = model.weights.row(c);
        double hinge = 0.0;
        for (std::size_t i = 0; i < train.rows(); ++i) {
            const double y = static_cast<std::size_t>(labels[i]) == c ? 1.0 : -1.0;
            const double margin = y * (dot_row(w, train.row(i)) + model.bias[c]);
            hinge += std::max(0.0, 1.0 - margin);
        }
        total += model.config.lambda / 2.0 * dot_row(w, w) +
                 hinge / static_cast<double>(train.rows());
    }
    return total;
}

void to_json(nlohmann::json& j, const SvmModel& model) {
    nlohmann::json weights = nlohmann::json::array();
    for (std::size_t c = 0; c < model.weights.rows(); ++c) {
        const auto row = model.weights.row(c);
        weights.push_back(std::vector<double>(row.begin(), row.end()));
    }
    j = nlohmann::json{{"type", "svm"},
                       {"weights", weights},
                       {"bias", model.bias},
                       {"lambda", model.config.lambda},
                       {"epochs", model.config.epochs},
                       {"seed", model.config.seed}};
}

void from_json(const nlohmann::json& j, SvmModel& model) {
    model.weights = Matrix::from_rows(j.at("weights").get<std::vector<std::vector<double>>>());
    model.bias = j.at("bias").get<std::vector<double>>();
    model.config.lambda = j.at("lambda").get<double>();
    model.config.epochs = j.at("epochs").get<std::size_t>();
    model.config.seed = j.at("seed").get<std::uint64_t>();
}

}  // namespace fspesoa
