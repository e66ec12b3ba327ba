#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pararm/environment.hpp"
#include "pararm/scaling.hpp"

namespace pararm {

/// One algorithm entry from a config file. Grid-valued fields (deadline) are
/// kept as lists and expanded by run_experiment.
struct AlgorithmEntry {
    std::string name;  // apr | batch_racing | ssh | sh | ucbe
    double beta = 2.0;
    double delta = 0.1;
    double deviation_scale = 1.0;
    int batch_size = 1;
    int k = 0;  // 0 = auto
    double a = 1.0;
    std::vector<double> deadlines;  // fixed-deadline algorithms only
};

struct InstanceRecipe {
    enum class Kind { linear_gap, uniform, explicit_means };
    Kind kind = Kind::linear_gap;
    int n = 2;
    std::vector<double> delta2;  // linear_gap grid
    std::uint64_t seed = 0;      // uniform: per-replication child streams
    BanditInstance explicit_instance;
};

struct ExperimentConfig {
    std::string experiment = "experiment";
    enum class Setting { fixed_confidence, fixed_deadline } setting = Setting::fixed_confidence;
    InstanceRecipe instance;
    ScalingSpec scaling;
    std::vector<AlgorithmEntry> algorithms;
    int replications = 1;
    std::uint64_t base_seed = 0;
    std::uint64_t max_total_pulls = 10000000;  // per replication
};

ExperimentConfig load_experiment_config(const std::string& path);
ExperimentConfig parse_experiment_config(const std::string& json_text);

struct ResultRow {
    std::string experiment;
    std::string algorithm;
    std::string params;
    int rep = 0;
    std::uint64_t seed = 0;
    bool success = false;
    double virtual_time = 0.0;
    std::uint64_t total_pulls = 0;
    double wall_seconds = 0.0;
    std::string error;  // empty on a clean run; not part of the CSV schema
};

/// One fully resolved (instance variant, algorithm, parameter point) cell of
/// the experiment grid, as enumerated deterministically by expand_grid.
struct ExperimentCell {
    std::string experiment;
    std::string algorithm;
    std::string params;
    AlgorithmEntry entry;            // with deadline resolved
    double deadline = 0.0;
    std::optional<double> delta2;    // linear_gap variant, if any
};

std::vector<ExperimentCell> expand_grid(const ExperimentConfig& config);

/// Executes every (cell, replication) pair with seed = child(base_seed, pair
/// index). Rows come back in enumeration order regardless of the worker
/// count. Per-run infeasibility becomes success=false with an error tag.
std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int jobs = 1);

/// Header: experiment,algorithm,params,rep,seed,success,virtual_time,total_pulls,wall_seconds.
/// wall_seconds is written as 0 unless with_wall_clock is set, keeping the
/// default output byte-identical across repeated runs.
void write_csv(const std::vector<ResultRow>& rows, std::ostream& out,
               bool with_wall_clock = false);

struct Summary {
    int rows = 0;
    double success_mean = 0.0;
    double success_se = 0.0;
    double virtual_time_mean = 0.0;
    double virtual_time_se = 0.0;
    bool degenerate = false;  // single row: standard errors set to 0 by convention
};

/// Per (experiment, algorithm, params) statistics in first-seen order.
/// Standard error = sample standard deviation / sqrt(#rows).
std::vector<std::pair<std::string, Summary>> summarize(const std::vector<ResultRow>& rows);

}  // namespace pararm
