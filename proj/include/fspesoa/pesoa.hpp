#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "fspesoa/matrix.hpp"

namespace fspesoa {

/// Knobs for one colony run. Oxygen is the shared iteration budget: the loop
/// runs while oxygen > 0 and every iteration costs `oxygen_decrement`.
struct PeSOAConfig {
    std::size_t population = 10;
    double initial_oxygen = 100.0;
    double oxygen_decrement = 1.0;
    double cutoff = 0.5;
    std::uint64_t seed = 0;
    // When false, a move onto an already-visited feature is redirected to a
    // random unvisited one; when true the raw position rule is applied as-is
    // (which stalls once fitness values repeat).
    bool strict_position_rule = false;
    bool early_stop_all_visited = true;

    void validate() const;
};

/// One search agent: the feature it currently dives on.
struct Penguin {
    std::size_t id = 0;
    std::size_t position = 0;
    double last_fitness = 0.0;
};

/// Shared colony knowledge: per-feature mean, raw variance fitness, and the
/// [0,1]-rescaled fitness. Entries are meaningful only where visited is set.
struct FitnessTable {
    std::vector<double> mean;
    std::vector<double> raw;
    std::vector<double> scaled;
    std::vector<char> visited;

    explicit FitnessTable(std::size_t num_features = 0)
        : mean(num_features, 0.0),
          raw(num_features, 0.0),
          scaled(num_features, 0.0),
          visited(num_features, 0) {}

    std::size_t size() const { return raw.size(); }
    bool all_visited() const;
    std::vector<std::size_t> visited_features() const;
};

struct TrajectoryStep {
    std::size_t iteration;
    std::size_t penguin;
    std::size_t feature;
    double raw_fitness;

    friend bool operator==(const TrajectoryStep&, const TrajectoryStep&) = default;
};

enum class Termination { oxygen_exhausted, all_visited };

std::string to_string(Termination t);
Termination termination_from_string(const std::string& s);

struct SelectionResult {
    std::vector<std::size_t> selected;  // sorted ascending
    FitnessTable table;
    std::vector<TrajectoryStep> trajectory;
    Termination termination = Termination::oxygen_exhausted;
    std::size_t iterations_run = 0;
    PeSOAConfig config;
};

/// Mean and population variance (divisor n) of column j of the scaled
/// training matrix. The variance is the feature's raw fitness.
std::pair<double, double> feature_fitness(const Matrix& scaled_train, std::size_t j);

/// Min-max rescale of raw fitness over the visited features. When all visited
/// fitness values are equal, every visited feature gets scaled fitness 1.
FitnessTable scale_fitness(const FitnessTable& table);

/// Position rule: floor(f_scaled * m), clamped to a valid feature index.
std::size_t update_position(double f_scaled, std::size_t num_features);

/// One iteration's oxygen decrement. The colony continues while the result > 0.
double update_oxygen(double oxygen, double decrement);

/// Visited features whose scaled fitness reaches the cutoff; falls back to
/// the single best raw-fitness feature if the threshold empties the set.
std::vector<std::size_t> apply_cutoff(const FitnessTable& table, double cutoff);

/// The full colony search over a min-max-scaled training matrix.
SelectionResult run_pesoa(const Matrix& scaled_train, const PeSOAConfig& config);

void to_json(nlohmann::json& j, const PeSOAConfig& config);
void from_json(const nlohmann::json& j, PeSOAConfig& config);
void to_json(nlohmann::json& j, const SelectionResult& result);
void from_json(const nlohmann::json& j, SelectionResult& result);

}  // namespace fspesoa
