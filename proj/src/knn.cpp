#include <algorithm>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fspesoa/classifiers.hpp"

namespace fspesoa {

KnnModel knn_fit(const Matrix& train, const std::vector<int>& labels, std::size_t k) {
    if (k < 1) throw std::invalid_argument("knn_fit: k must be >= 1");
    if (k > train.rows()) throw std::invalid_argument("knn_fit: k exceeds training size");
    if (labels.size() != train.rows()) throw std::invalid_argument("knn_fit: label count mismatch");
    return KnnModel{train, labels, k};
}

std::vector<int> knn_predict(const KnnModel& model, const Matrix& test) {
    if (test.cols() != model.train.cols()) {
        throw std::invalid_argument("knn_predict: feature count mismatch");
    }

    std::vector<int> predictions;
    predictions.reserve(test.rows());
    std::vector<std::pair<double, std::size_t>> distances(model.train.rows());

    for (std::size_t t = 0; t < test.rows(); ++t) {
        const auto query = test.row(t);
        for (std::size_t r = 0; r < model.train.rows(); ++r) {
            const auto row = model.train.row(r);
            double sum = 0.0;
            for (std::size_t c = 0; c < row.size(); ++c) {
                const double diff = row[c] - query[c];
                sum += diff * diff;
            }
            distances[r] = {sum, r};  // squared distance orders the same as Euclidean
        }
        std::partial_sort(distances.begin(),
                          distances.begin() + static_cast<std::ptrdiff_t>(model.k),
                          distances.end());  // pair ordering breaks ties by row index

        std::vector<std::size_t> votes;
        for (std::size_t i = 0; i < model.k; ++i) {
            const auto label = static_cast<std::size_t>(model.labels[distances[i].second]);
            if (label >= votes.size()) votes.resize(label + 1, 0);
            ++votes[label];
        }
        std::size_t best = 0;
        for (std::size_t c = 1; c < votes.size(); ++c) {
            if (votes[c] > votes[best]) best = c;
        }
        predictions.push_back(static_cast<int>(best));
    }
    return predictions;
}

void to_json(nlohmann::json& j, const KnnModel& model) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < model.train.rows(); ++r) {
        const auto row = model.train.row(r);
        rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    j = nlohmann::json{{"type", "knn"}, {"k", model.k}, {"train", rows}, {"labels", model.labels}};
}

void from_json(const nlohmann::json& j, KnnModel& model) {
    model.k = j.at("k").get<std::size_t>();
    model.labels = j.at("labels").get<std::vector<int>>();
    model.train = Matrix::from_rows(j.at("train").get<std::vector<std::vector<double>>>());
}

}  // namespace fspesoa
