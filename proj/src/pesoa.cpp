#include "fspesoa/pesoa.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fspesoa/rng.hpp"

namespace fspesoa {

void PeSOAConfig::validate() const {
    if (population < 1) throw std::invalid_argument("PeSOAConfig: population must be >= 1");
    if (!(initial_oxygen > 0.0)) throw std::invalid_argument("PeSOAConfig: initial_oxygen must be > 0");
    if (!(oxygen_decrement > 0.0)) throw std::invalid_argument("PeSOAConfig: oxygen_decrement must be > 0");
    if (!(cutoff >= 0.0 && cutoff <= 1.0)) throw std::invalid_argument("PeSOAConfig: cutoff must be in [0,1]");
}

bool FitnessTable::all_visited() const {
    return std::all_of(visited.begin(), visited.end(), [](char v) { return v != 0; });
}

std::vector<std::size_t> FitnessTable::visited_features() const {
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < visited.size(); ++j) {
        if (visited[j]) out.push_back(j);
    }
    return out;
}

std::string to_string(Termination t) {
    return t == Termination::oxygen_exhausted ? "oxygen_exhausted" : "all_visited";
}

Termination termination_from_string(const std::string& s) {
    if (s == "oxygen_exhausted") return Termination::oxygen_exhausted;
    if (s == "all_visited") return Termination::all_visited;
    throw std::invalid_argument("unknown termination: " + s);
}

std::pair<double, double> feature_fitness(const Matrix& scaled_train, std::size_t j) {
    if (j >= scaled_train.cols()) throw std::out_of_range("feature_fitness: feature index out of range");
    if (scaled_train.rows() == 0) throw std::invalid_argument("feature_fitness: empty matrix");
    // Welford's recurrence; the independent check in the tests is two-pass.
    double mean = 0.0;
    double m2 = 0.0;
    for (std::size_t r = 0; r < scaled_train.rows(); ++r) {
        const double x = scaled_train(r, j);
        const double count = static_cast<double>(r + 1);
        const double delta = x - mean;
        mean += delta / count;
        m2 += delta * (x - mean);
    }
    return {mean, m2 / static_cast<double>(scaled_train.rows())};
}

FitnessTable scale_fitness(const FitnessTable& table) {
    const auto visited = table.visited_features();
    if (visited.empty()) throw std::invalid_argument("scale_fitness: no visited features");

    double lo = table.raw[visited.front()];
    double hi = lo;
    for (std::size_t j : visited) {
        lo = std::min(lo, table.raw[j]);
        hi = std::max(hi, table.raw[j]);
    }

    FitnessTable out = table;
    for (std::size_t j : visited) {
        out.scaled[j] = hi > lo ? (table.raw[j] - lo) / (hi - lo) : 1.0;
    }
    return out;
}

std::size_t update_position(double f_scaled, std::size_t num_features) {
    if (num_features < 1) throw std::invalid_argument("update_position: need at least one feature");
    if (!(f_scaled >= 0.0 && f_scaled <= 1.0)) {
        throw std::invalid_argument("update_position: scaled fitness outside [0,1]");
    }
    auto index = static_cast<std::size_t>(std::floor(f_scaled * static_cast<double>(num_features)));
    return std::min(index, num_features - 1);
}

double update_oxygen(double oxygen, double decrement) {
    if (!(decrement > 0.0)) throw std::invalid_argument("update_oxygen: decrement must be > 0");
    return oxygen - decrement;
}

std::vector<std::size_t> apply_cutoff(const FitnessTable& table, double cutoff) {
    const auto visited = table.visited_features();
    if (visited.empty()) throw std::invalid_argument("apply_cutoff: no visited features");

    std::vector<std::size_t> selected;
    for (std::size_t j : visited) {
        if (table.scaled[j] >= cutoff) selected.push_back(j);
    }
    if (selected.empty()) {
        std::size_t best = visited.front();
        for (std::size_t j : visited) {
            if (table.raw[j] > table.raw[best]) best = j;
        }
        selected.push_back(best);
    }
    return selected;
}

SelectionResult run_pesoa(const Matrix& scaled_train, const PeSOAConfig& config) {
    config.validate();
    const std::size_t num_features = scaled_train.cols();
    if (num_features == 0) throw std::invalid_argument("run_pesoa: matrix has no features");
    if (scaled_train.rows() == 0) throw std::invalid_argument("run_pesoa: matrix has no rows");

    std::mt19937_64 rng(mix_seed(config.seed, 0));

    std::vector<Penguin> colony(config.population);
    const auto initial = sample_indices(num_features, config.population,
                                        /*with_replacement=*/config.population > num_features, rng);
    for (std::size_t i = 0; i < colony.size(); ++i) {
        colony[i].id = i;
        colony[i].position = initial[i];
    }

    SelectionResult result;
    result.config = config;
    result.table = FitnessTable(num_features);
    result.trajectory.reserve(config.population * 16);

    auto unvisited_features = [&]() {
        std::vector<std::size_t> out;
        for (std::size_t j = 0; j < num_features; ++j) {
            if (!result.table.visited[j]) out.push_back(j);
        }
        return out;
    };

    double oxygen = config.initial_oxygen;
    std::size_t iteration = 0;
    result.termination = Termination::oxygen_exhausted;

    while (oxygen > 0.0) {
        // Dive: every penguin evaluates the feature it sits on. Fitness is a
        // pure function of the feature, so each one is computed at most once.
        for (auto& penguin : colony) {
            const std::size_t j = penguin.position;
            if (!result.table.visited[j]) {
                auto [mean, variance] = feature_fitness(scaled_train, j);
                result.table.mean[j] = mean;
                result.table.raw[j] = variance;
                result.table.visited[j] = 1;
            }
            penguin.last_fitness = result.table.raw[j];
            result.trajectory.push_back({iteration, penguin.id, j, penguin.last_fitness});
        }

        // Surface: the colony pools its findings and rescales them to [0,1].
        result.table = scale_fitness(result.table);

        // Move: each penguin derives its next dive site from its own scaled
        // fitness; a move onto an already-known feature is redirected to a
        // random unexplored one unless the strict rule is requested.
        for (auto& penguin : colony) {
            std::size_t next = update_position(result.table.scaled[penguin.position], num_features);
            if (!config.strict_position_rule && result.table.visited[next]) {
                const auto open = unvisited_features();
                if (!open.empty()) next = open[uniform_below(rng, open.size())];
            }
            penguin.position = next;
        }

        oxygen = update_oxygen(oxygen, config.oxygen_decrement);
        ++iteration;

        if (config.early_stop_all_visited && result.table.all_visited()) {
            result.termination = Termination::all_visited;
            break;
        }
    }

    result.iterations_run = iteration;
    result.selected = apply_cutoff(result.table, config.cutoff);
    return result;
}

void to_json(nlohmann::json& j, const PeSOAConfig& config) {
    j = nlohmann::json{{"population", config.population},
                       {"initial_oxygen", config.initial_oxygen},
                       {"oxygen_decrement", config.oxygen_decrement},
                       {"cutoff", config.cutoff},
                       {"seed", config.seed},
                       {"strict_position_rule", config.strict_position_rule},
                       {"early_stop_all_visited", config.early_stop_all_visited}};
}

void from_json(const nlohmann::json& j, PeSOAConfig& config) {
    config = PeSOAConfig{};
    if (j.contains("population")) j.at("population").get_to(config.population);
    if (j.contains("initial_oxygen")) j.at("initial_oxygen").get_to(config.initial_oxygen);
    if (j.contains("oxygen_decrement")) j.at("oxygen_decrement").get_to(config.oxygen_decrement);
    if (j.contains("cutoff")) j.at("cutoff").get_to(config.cutoff);
    if (j.contains("seed")) j.at("seed").get_to(config.seed);
    if (j.contains("strict_position_rule")) j.at("strict_position_rule").get_to(config.strict_position_rule);
    if (j.contains("early_stop_all_visited")) j.at("early_stop_all_visited").get_to(config.early_stop_all_visited);
}

void to_json(nlohmann::json& j, const SelectionResult& result) {
    nlohmann::json fitness = nlohmann::json::object();
    for (std::size_t f : result.table.visited_features()) {
        fitness[std::to_string(f)] = {{"mean", result.table.mean[f]},
                                      {"raw", result.table.raw[f]},
                                      {"scaled", result.table.scaled[f]}};
    }
    nlohmann::json trajectory = nlohmann::json::array();
    for (const auto& step : result.trajectory) {
        trajectory.push_back({step.iteration, step.penguin, step.feature, step.raw_fitness});
    }
    j = nlohmann::json{{"selected", result.selected},
                       {"num_features", result.table.size()},
                       {"fitness", fitness},
                       {"trajectory", trajectory},
                       {"termination", to_string(result.termination)},
                       {"iterations_run", result.iterations_run},
                       {"config", result.config}};
}

void from_json(const nlohmann::json& j, SelectionResult& result) {
    result = SelectionResult{};
    j.at("selected").get_to(result.selected);
    j.at("config").get_to(result.config);
    j.at("iterations_run").get_to(result.iterations_run);
    result.termination = termination_from_string(j.at("termination").get<std::string>());

    result.table = FitnessTable(j.at("num_features").get<std::size_t>());
    for (const auto& [key, value] : j.at("fitness").items()) {
        const auto f = static_cast<std::size_t>(std::stoull(key));
        result.table.mean[f] = value.at("mean").get<double>();
        result.table.raw[f] = value.at("raw").get<double>();
        result.table.scaled[f] = value.at("scaled").get<double>();
        result.table.visited[f] = 1;
    }
    for (const auto& step : j.at("trajectory")) {
        result.trajectory.push_back({step.at(0).get<std::size_t>(), step.at(1).get<std::size_t>(),
                                     step.at(2).get<std::size_t>(), step.at(3).get<double>()});
    }
}

}  // namespace fspesoa
