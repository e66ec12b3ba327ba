#include "pararm/harness.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <future>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "pararm/errors.hpp"
#include "pararm/fixed_confidence.hpp"
#include "pararm/fixed_deadline.hpp"
#include "pararm/seeding.hpp"

namespace pararm {

namespace {

using nlohmann::json;

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

ScalingSpec parse_scaling(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return ScalingSpec::power_law(j.at("q").get<double>());
    if (kind == "linear") return ScalingSpec::linear_scale(j.at("c").get<double>());
    if (kind == "amdahl")
        return ScalingSpec::amdahl_law(j.at("serial").get<double>(),
                                       j.at("parallel").get<double>());
    if (kind == "tabulated") {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : j.at("points")) pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        return ScalingSpec::tabulated(std::move(pts));
    }
    throw ConfigError("unknown scaling kind '" + kind + "'");
}

std::vector<double> parse_grid(const json& j) {
    if (j.is_array()) return j.get<std::vector<double>>();
    return {j.get<double>()};
}

InstanceRecipe parse_instance(const json& j) {
    InstanceRecipe recipe;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "linear_gap") {
        recipe.kind = InstanceRecipe::Kind::linear_gap;
        recipe.n = j.at("n").get<int>();
        recipe.delta2 = parse_grid(j.at("delta2"));
        if (recipe.delta2.empty()) throw ConfigError("linear_gap needs at least one delta2");
        for (double d : recipe.delta2)
            if (!(d > 0.0) || d > 0.8) throw ConfigError("delta2 must be in (0, 0.8]");
    } else if (kind == "uniform") {
        recipe.kind = InstanceRecipe::Kind::uniform;
        recipe.n = j.at("n").get<int>();
        recipe.seed = j.at("seed").get<std::uint64_t>();
    } else if (kind == "explicit") {
        recipe.kind = InstanceRecipe::Kind::explicit_means;
        const std::string dist = j.value("distribution", std::string("bernoulli"));
        for (double m : j.at("means").get<std::vector<double>>()) {
            recipe.explicit_instance.arms.push_back(dist == "gaussian"
                                                        ? ArmDistribution::gaussian(m)
                                                        : ArmDistribution::bernoulli(m));
        }
        recipe.n = recipe.explicit_instance.n();
    } else {
        throw ConfigError("unknown instance kind '" + kind + "'");
    }
    if (recipe.n < 2) throw ConfigError("instances need n >= 2");
    return recipe;
}

AlgorithmEntry parse_algorithm(const json& j, ExperimentConfig::Setting setting, int n) {
    AlgorithmEntry entry;
    entry.name = j.at("name").get<std::string>();
    const bool fixed_conf = setting == ExperimentConfig::Setting::fixed_confidence;

    if (entry.name == "apr" || entry.name == "batch_racing") {
        if (!fixed_conf) throw ConfigError(entry.name + " belongs to the fixed-confidence setting");
        entry.delta = j.at("delta").get<double>();
        if (!(entry.delta > 0.0) || !(entry.delta < 1.0))
            throw ConfigError("delta must lie in (0, 1)");
        entry.deviation_scale = j.value("deviation_scale", 1.0);
        if (!(entry.deviation_scale > 0.0)) throw ConfigError("deviation_scale must be positive");
        if (entry.name == "apr") {
            entry.beta = j.value("beta", 2.0);
            if (!(entry.beta > 1.0)) throw ConfigError("beta must exceed 1");
        } else {
            entry.batch_size = j.at("batch_size").get<int>();
            if (entry.batch_size < 1) throw ConfigError("batch_size must be at least 1");
        }
    } else if (entry.name == "ssh" || entry.name == "sh" || entry.name == "ucbe") {
        if (fixed_conf) throw ConfigError(entry.name + " belongs to the fixed-deadline setting");
        entry.deadlines = parse_grid(j.at("deadline"));
        for (double t : entry.deadlines)
            if (!(t > 0.0)) throw ConfigError("deadlines must be positive");
        if (entry.name == "ssh") {
            if (j.contains("k") && j.at("k").is_number_integer()) {
                entry.k = j.at("k").get<int>();
                if (entry.k < 1 || entry.k > ceil_log2(static_cast<std::uint64_t>(n)))
                    throw ConfigError("k out of range for n = " + std::to_string(n));
            } else {
                entry.k = 0;  // auto
            }
        }
        if (entry.name == "ucbe") entry.a = j.value("a", 1.0);
    } else {
        throw ConfigError("unknown algorithm '" + entry.name + "'");
    }
    return entry;
}

BanditInstance build_instance(const ExperimentConfig& config, const ExperimentCell& cell,
                              int rep) {
    switch (config.instance.kind) {
        case InstanceRecipe::Kind::linear_gap:
            return make_linear_gap_instance(config.instance.n, *cell.delta2);
        case InstanceRecipe::Kind::uniform:
            // Fresh instance per replication; algorithms at the same rep index
            // share it, so comparisons are paired.
            return make_uniform_instance(config.instance.n,
                                         child_seed(config.instance.seed, rep));
        case InstanceRecipe::Kind::explicit_means:
            return config.instance.explicit_instance;
    }
    throw ConfigError("unknown instance kind");
}

ResultRow execute_one(const ExperimentConfig& config, const ExperimentCell& cell, int rep,
                      std::uint64_t seed) {
    ResultRow row;
    row.experiment = cell.experiment;
    row.algorithm = cell.algorithm;
    row.params = cell.params;
    row.rep = rep;
    row.seed = seed;

    const auto start = std::chrono::steady_clock::now();
    try {
        const BanditInstance instance = build_instance(config, cell, rep);
        const int truth = instance.best_arm();
        int recommended = -1;
        if (cell.entry.name == "apr") {
            AprConfig apr;
            apr.beta = cell.entry.beta;
            apr.delta = cell.entry.delta;
            apr.deviation_scale = cell.entry.deviation_scale;
            apr.max_total_pulls = config.max_total_pulls;
            const AprResult result = run_apr(instance, config.scaling, apr, seed);
            recommended = result.best_arm;
            row.virtual_time = result.virtual_time;
            row.total_pulls = 0;
            for (const RoundTrace& t : result.trace)
                row.total_pulls += t.pulls_per_arm * t.survivors;
        } else if (cell.entry.name == "batch_racing") {
            BatchRacingConfig racing;
            racing.batch_size = cell.entry.batch_size;
            racing.delta = cell.entry.delta;
            racing.deviation_scale = cell.entry.deviation_scale;
            racing.max_total_pulls = config.max_total_pulls;
            const AprResult result = run_batch_racing(instance, config.scaling, racing, seed);
            recommended = result.best_arm;
            row.virtual_time = result.virtual_time;
            row.total_pulls = 0;
            for (const RoundTrace& t : result.trace)
                row.total_pulls += std::min<std::uint64_t>(t.survivors, cell.entry.batch_size);
        } else if (cell.entry.name == "ssh" || cell.entry.name == "sh") {
            SshConfig ssh;
            ssh.deadline = cell.deadline;
            ssh.k = cell.entry.name == "sh" ? 1 : cell.entry.k;
            ssh.max_total_pulls = config.max_total_pulls;
            const SshResult result = run_ssh(instance, config.scaling, ssh, seed);
            recommended = result.best_arm;
            row.virtual_time = result.virtual_time;
            for (const StageTrace& t : result.stage_trace)
                row.total_pulls += t.pulls_per_arm * t.survivors_in;
        } else if (cell.entry.name == "ucbe") {
            const UcbeResult result = run_ucbe(instance, config.scaling, cell.deadline,
                                               cell.entry.a, seed, config.max_total_pulls);
            recommended = result.best_arm;
            row.virtual_time = result.virtual_time;
            row.total_pulls = result.pulls;
        }
        row.success = recommended == truth;
    } catch (const InfeasibleDeadlineError& e) {
        row.success = false;
        row.error = std::string("infeasible_deadline: ") + e.what();
    } catch (const BudgetExhaustedError& e) {
        row.success = false;
        row.error = std::string("budget_exhausted: ") + e.what();
        row.virtual_time = e.partial.virtual_time;
    } catch (const PullCapError& e) {
        row.success = false;
        row.error = std::string("pull_cap: ") + e.what();
    }
    row.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return row;
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    ExperimentConfig config;
    config.experiment = j.value("experiment", std::string("experiment"));
    const std::string setting = j.at("setting").get<std::string>();
    if (setting == "fixed_confidence")
        config.setting = ExperimentConfig::Setting::fixed_confidence;
    else if (setting == "fixed_deadline")
        config.setting = ExperimentConfig::Setting::fixed_deadline;
    else
        throw ConfigError("setting must be fixed_confidence or fixed_deadline");

    config.instance = parse_instance(j.at("instance"));
    config.scaling = parse_scaling(j.at("scaling"));
    config.replications = j.at("replications").get<int>();
    if (config.replications < 1) throw ConfigError("replications must be at least 1");
    config.base_seed = j.at("base_seed").get<std::uint64_t>();
    config.max_total_pulls = j.value("max_total_pulls", std::uint64_t{10000000});

    if (!j.at("algorithms").is_array() || j.at("algorithms").empty())
        throw ConfigError("config needs a non-empty algorithms list");
    for (const auto& entry : j.at("algorithms"))
        config.algorithms.push_back(parse_algorithm(entry, config.setting, config.instance.n));
    return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_experiment_config(buffer.str());
}

std::vector<ExperimentCell> expand_grid(const ExperimentConfig& config) {
    std::vector<ExperimentCell> cells;

    std::vector<std::optional<double>> variants;
    if (config.instance.kind == InstanceRecipe::Kind::linear_gap)
        for (double d : config.instance.delta2) variants.emplace_back(d);
    else
        variants.emplace_back(std::nullopt);

    for (const auto& variant : variants) {
        for (const AlgorithmEntry& entry : config.algorithms) {
            std::vector<double> deadlines = entry.deadlines;
            if (deadlines.empty()) deadlines.push_back(0.0);
            for (double deadline : deadlines) {
                ExperimentCell cell;
                cell.experiment = config.experiment;
                if (variant) cell.experiment += "/d2=" + format_number(*variant);
                cell.algorithm = entry.name;
                cell.entry = entry;
                cell.entry.deadlines.clear();
                cell.deadline = deadline;
                cell.delta2 = variant;

                std::ostringstream params;
                if (entry.name == "apr")
                    params << "beta=" << format_number(entry.beta)
                           << ";delta=" << format_number(entry.delta)
                           << ";scale=" << format_number(entry.deviation_scale);
                else if (entry.name == "batch_racing")
                    params << "m=" << entry.batch_size << ";delta=" << format_number(entry.delta)
                           << ";scale=" << format_number(entry.deviation_scale);
                else if (entry.name == "ssh")
                    params << "k=" << (entry.k == 0 ? std::string("auto") : std::to_string(entry.k))
                           << ";T=" << format_number(deadline);
                else if (entry.name == "sh")
                    params << "T=" << format_number(deadline);
                else if (entry.name == "ucbe")
                    params << "a=" << format_number(entry.a) << ";T=" << format_number(deadline);
                cell.params = params.str();
                cells.push_back(std::move(cell));
            }
        }
    }
    return cells;
}

std::vector<ResultRow> run_experiment(const ExperimentConfig& config, int jobs) {
    const std::vector<ExperimentCell> cells = expand_grid(config);

    struct Task {
        const ExperimentCell* cell;
        int rep;
        std::uint64_t seed;
    };
    std::vector<Task> tasks;
    std::uint64_t pair_index = 0;
    for (const ExperimentCell& cell : cells)
        for (int rep = 0; rep < config.replications; ++rep)
            tasks.push_back({&cell, rep, child_seed(config.base_seed, pair_index++)});

    std::vector<ResultRow> rows(tasks.size());
    if (jobs <= 1) {
        for (std::size_t i = 0; i < tasks.size(); ++i)
            rows[i] = execute_one(config, *tasks[i].cell, tasks[i].rep, tasks[i].seed);
        return rows;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            rows[i] = execute_one(config, *tasks[i].cell, tasks[i].rep, tasks[i].seed);
        }
    };
    std::vector<std::future<void>> pool;
    for (int w = 0; w < jobs; ++w) pool.push_back(std::async(std::launch::async, worker));
    for (auto& f : pool) f.get();
    return rows;
}

void write_csv(const std::vector<ResultRow>& rows, std::ostream& out, bool with_wall_clock) {
    out << "experiment,algorithm,params,rep,seed,success,virtual_time,total_pulls,wall_seconds\n";
    for (const ResultRow& row : rows) {
        out << row.experiment << ',' << row.algorithm << ',' << row.params << ',' << row.rep
            << ',' << row.seed << ',' << (row.success ? 1 : 0) << ','
            << format_number(row.virtual_time) << ',' << row.total_pulls << ',';
        if (with_wall_clock) {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "%.6f", row.wall_seconds);
            out << buf;
        } else {
            out << 0;
        }
        out << '\n';
    }
}

std::vector<std::pair<std::string, Summary>> summarize(const std::vector<ResultRow>& rows) {
    if (rows.empty()) throw DomainError("cannot summarize zero rows");

    std::vector<std::string> order;
    std::map<std::string, std::vector<const ResultRow*>> groups;
    for (const ResultRow& row : rows) {
        const std::string key = row.experiment + "|" + row.algorithm + "|" + row.params;
        if (!groups.count(key)) order.push_back(key);
        groups[key].push_back(&row);
    }

    auto mean_se = [](const std::vector<double>& xs) {
        const double mean =
            std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
        if (xs.size() < 2) return std::pair<double, double>{mean, 0.0};
        double ss = 0.0;
        for (double x : xs) ss += (x - mean) * (x - mean);
        const double sd = std::sqrt(ss / double(xs.size() - 1));
        return std::pair<double, double>{mean, sd / std::sqrt(double(xs.size()))};
    };

    std::vector<std::pair<std::string, Summary>> out;
    for (const std::string& key : order) {
        const auto& group = groups[key];
        std::vector<double> success, vtime;
        for (const ResultRow* row : group) {
            success.push_back(row->success ? 1.0 : 0.0);
            vtime.push_back(row->virtual_time);
        }
        Summary s;
        s.rows = static_cast<int>(group.size());
        std::tie(s.success_mean, s.success_se) = mean_se(success);
        std::tie(s.virtual_time_mean, s.virtual_time_se) = mean_se(vtime);
        s.degenerate = group.size() == 1;
        out.emplace_back(key, s);
    }
    return out;
}

}  // namespace pararm
