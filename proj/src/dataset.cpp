#include "fspesoa/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "fspesoa/rng.hpp"
#include "fspesoa/text.hpp"

namespace fspesoa {

namespace {

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("load_csv: cannot open file: " + path.string());
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

bool is_blank(const std::string& line) {
    return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column) {
    const auto lines = read_lines(path);
    if (lines.empty() || is_blank(lines.front())) {
        throw std::runtime_error("load_csv: " + path.string() + ": missing header row");
    }

    const auto header = split_csv_record(lines.front());
    std::size_t label_index;
    if (label_column.empty()) {
        label_index = header.size() - 1;
    } else {
        auto it = std::find(header.begin(), header.end(), label_column);
        if (it == header.end()) {
            throw std::runtime_error("load_csv: no column named '" + label_column + "' in " +
                                     path.string());
        }
        label_index = static_cast<std::size_t>(it - header.begin());
    }
    if (header.size() < 2) {
        throw std::runtime_error("load_csv: " + path.string() + ": need at least one feature column");
    }

    Dataset ds;
    ds.name = path.stem().string();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (c != label_index) ds.feature_names.push_back(header[c]);
    }

    std::vector<std::vector<double>> rows;
    std::unordered_map<std::string, int> class_ids;
    for (std::size_t lineno = 1; lineno < lines.size(); ++lineno) {
        if (is_blank(lines[lineno])) continue;
        const auto fields = split_csv_record(lines[lineno]);
        if (fields.size() != header.size()) {
            std::ostringstream msg;
            msg << "load_csv: " << path.string() << ": line " << lineno + 1 << " has "
                << fields.size() << " fields, expected " << header.size();
            throw std::runtime_error(msg.str());
        }
        std::vector<double> row;
        row.reserve(header.size() - 1);
        for (std::size_t c = 0; c < fields.size(); ++c) {
            if (c == label_index) continue;
            auto value = parse_double(fields[c]);
            if (!value) {
                std::ostringstream msg;
                msg << "load_csv: " << path.string() << ": non-numeric feature cell '" << fields[c]
                    << "' at line " << lineno + 1 << ", column " << c + 1;
                throw std::runtime_error(msg.str());
            }
            row.push_back(*value);
        }
        rows.push_back(std::move(row));

        const std::string& label = fields[label_index];
        auto [it, inserted] = class_ids.emplace(label, static_cast<int>(ds.class_names.size()));
        if (inserted) ds.class_names.push_back(label);
        ds.labels.push_back(it->second);
    }

    if (rows.empty()) {
        throw std::runtime_error("load_csv: " + path.string() + ": empty dataset");
    }
    if (ds.class_names.size() < 2) {
        throw std::runtime_error("load_csv: " + path.string() + ": fewer than 2 distinct labels");
    }
    ds.features = Matrix::from_rows(rows);
    return ds;
}

void save_csv(const Dataset& dataset, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("save_csv: cannot write file: " + path.string());
    }
    for (const auto& name : dataset.feature_names) out << csv_escape(name) << ',';
    out << "class\n";
    for (std::size_t r = 0; r < dataset.features.rows(); ++r) {
        for (std::size_t c = 0; c < dataset.features.cols(); ++c) {
            out << format_double(dataset.features(r, c)) << ',';
        }
        out << csv_escape(dataset.class_names[static_cast<std::size_t>(dataset.labels[r])]) << '\n';
    }
    if (!out) {
        throw std::runtime_error("save_csv: write failed: " + path.string());
    }
}

ScalingParams fit_minmax(const Matrix& train_features) {
    if (train_features.rows() == 0) {
        throw std::invalid_argument("fit_minmax: no training rows");
    }
    ScalingParams params;
    params.minimum.resize(train_features.cols());
    params.maximum.resize(train_features.cols());
    for (std::size_t c = 0; c < train_features.cols(); ++c) {
        double lo = train_features(0, c);
        double hi = lo;
        for (std::size_t r = 1; r < train_features.rows(); ++r) {
            lo = std::min(lo, train_features(r, c));
            hi = std::max(hi, train_features(r, c));
        }
        params.minimum[c] = lo;
        params.maximum[c] = hi;
    }
    return params;
}

Matrix apply_minmax(const ScalingParams& params, const Matrix& features) {
    if (features.cols() != params.minimum.size()) {
        throw std::invalid_argument("apply_minmax: column count does not match fitted params");
    }
    Matrix out(features.rows(), features.cols());
    for (std::size_t c = 0; c < features.cols(); ++c) {
        const double lo = params.minimum[c];
        const double range = params.maximum[c] - lo;
        for (std::size_t r = 0; r < features.rows(); ++r) {
            out(r, c) = range > 0.0 ? (features(r, c) - lo) / range : 0.0;
        }
    }
    return out;
}

Split split_80_20(const Dataset& dataset, std::uint64_t seed) {
    const int num_classes = dataset.num_classes();
    std::vector<std::vector<std::size_t>> by_class(static_cast<std::size_t>(num_classes));
    for (std::size_t i = 0; i < dataset.labels.size(); ++i) {
        by_class[static_cast<std::size_t>(dataset.labels[i])].push_back(i);
    }
    for (int c = 0; c < num_classes; ++c) {
        if (by_class[static_cast<std::size_t>(c)].size() < 2) {
            throw std::invalid_argument("split_80_20: class '" +
                                        dataset.class_names[static_cast<std::size_t>(c)] +
                                        "' has fewer than 2 samples");
        }
    }

    std::mt19937_64 rng(mix_seed(seed, 0));
    Split split;
    split.seed = seed;
    for (auto& members : by_class) {
        shuffle(members, rng);
        const auto train_count =
            static_cast<std::size_t>(std::floor(0.8 * static_cast<double>(members.size())));
        split.train_indices.insert(split.train_indices.end(), members.begin(),
                                   members.begin() + static_cast<std::ptrdiff_t>(train_count));
        split.test_indices.insert(split.test_indices.end(),
                                  members.begin() + static_cast<std::ptrdiff_t>(train_count),
                                  members.end());
    }
    std::sort(split.train_indices.begin(), split.train_indices.end());
    std::sort(split.test_indices.begin(), split.test_indices.end());
    return split;
}

}  // namespace fspesoa
