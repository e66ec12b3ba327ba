// pararm: virtual-time racing experiments under sublinear resource scaling.
//
//   pararm run --config recipe.json --out results.csv [--jobs N] [--timings]
//   pararm analyze --config analyze.json
//   pararm sweep --config recipe.json

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pararm/analysis.hpp"
#include "pararm/fixed_deadline.hpp"
#include "pararm/harness.hpp"
#include "pararm/seeding.hpp"

namespace {

using nlohmann::json;

int cmd_run(const std::string& config_path, const std::string& out_path, int jobs,
            bool timings) {
    const auto config = pararm::load_experiment_config(config_path);
    const auto rows = pararm::run_experiment(config, jobs);

    std::ofstream out(out_path);
    if (!out) {
        std::cerr << "cannot write " << out_path << "\n";
        return 1;
    }
    pararm::write_csv(rows, out, timings);

    std::cout << std::left << std::setw(58) << "experiment|algorithm|params" << std::right
              << std::setw(6) << "rows" << std::setw(10) << "success" << std::setw(9) << "se"
              << std::setw(13) << "mean_vtime" << std::setw(12) << "se" << '\n';
    for (const auto& [key, s] : pararm::summarize(rows)) {
        std::cout << std::left << std::setw(58) << key << std::right << std::setw(6) << s.rows
                  << std::setw(10) << std::fixed << std::setprecision(3) << s.success_mean
                  << std::setw(9) << s.success_se << std::setw(13) << std::setprecision(3)
                  << s.virtual_time_mean << std::setw(12) << s.virtual_time_se << '\n';
        std::cout.unsetf(std::ios::fixed);
    }
    std::cout << rows.size() << " rows -> " << out_path << "\n";
    return 0;
}

int cmd_sweep(const std::string& config_path) {
    const auto config = pararm::load_experiment_config(config_path);
    const auto cells = pararm::expand_grid(config);
    json out = json::array();
    std::uint64_t pair_index = 0;
    for (const auto& cell : cells) {
        json j;
        j["experiment"] = cell.experiment;
        j["algorithm"] = cell.algorithm;
        j["params"] = cell.params;
        if (cell.deadline > 0.0) j["deadline"] = cell.deadline;
        if (cell.delta2) j["delta2"] = *cell.delta2;
        json seeds = json::array();
        for (int rep = 0; rep < config.replications; ++rep)
            seeds.push_back(pararm::child_seed(config.base_seed, pair_index++));
        j["seeds"] = seeds;
        out.push_back(std::move(j));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

pararm::BanditInstance instance_from_analyze_config(const json& j) {
    const auto& spec = j.at("instance");
    const std::string kind = spec.at("kind").get<std::string>();
    if (kind == "linear_gap")
        return pararm::make_linear_gap_instance(spec.at("n").get<int>(),
                                                spec.at("delta2").get<double>());
    if (kind == "uniform")
        return pararm::make_uniform_instance(spec.at("n").get<int>(),
                                             spec.at("seed").get<std::uint64_t>());
    if (kind == "explicit") {
        pararm::BanditInstance instance;
        const std::string dist = spec.value("distribution", std::string("bernoulli"));
        for (double m : spec.at("means").get<std::vector<double>>())
            instance.arms.push_back(dist == "gaussian" ? pararm::ArmDistribution::gaussian(m)
                                                       : pararm::ArmDistribution::bernoulli(m));
        return instance;
    }
    throw pararm::ConfigError("unknown instance kind '" + kind + "'");
}

pararm::ScalingSpec scaling_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "power") return pararm::ScalingSpec::power_law(j.at("q").get<double>());
    if (kind == "linear") return pararm::ScalingSpec::linear_scale(j.at("c").get<double>());
    if (kind == "amdahl")
        return pararm::ScalingSpec::amdahl_law(j.at("serial").get<double>(),
                                               j.at("parallel").get<double>());
    if (kind == "tabulated") {
        std::vector<std::pair<double, double>> pts;
        for (const auto& p : j.at("points"))
            pts.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
        return pararm::ScalingSpec::tabulated(std::move(pts));
    }
    throw pararm::ConfigError("unknown scaling kind '" + kind + "'");
}

// Gap-aware planner values and bounds for one instance, as JSON.
int cmd_analyze(const std::string& config_path) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "cannot open " << config_path << "\n";
        return 1;
    }
    json j = json::parse(in);

    const auto instance = instance_from_analyze_config(j);
    const auto scaling = scaling_from_json(j.at("scaling"));
    const double delta = j.value("delta", 0.1);
    const double beta = j.value("beta", 2.0);
    const double c_lambda = j.value("c_lambda", 1.0);
    const int n = instance.n();

    const auto gapvec = pararm::gaps(instance);
    std::vector<double> inv_sq;
    for (int rank = 2; rank <= n; ++rank)
        inv_sq.push_back(1.0 / (gapvec.deltas[rank - 1] * gapvec.deltas[rank - 1]));
    const auto tstar = pararm::dp_tstar(inv_sq, scaling);

    const auto bars = pararm::nbar_vector(gapvec, delta, n);
    std::vector<double> bars_real(bars.begin(), bars.end());
    const auto t2_nbar = pararm::dp_tstar(bars_real, scaling);

    json out;
    out["n"] = n;
    out["delta"] = delta;
    out["tstar"] = tstar.value;
    out["tstar_schedule"] = tstar.schedule;
    out["h2"] = pararm::h2(gapvec);
    out["nbar"] = bars;
    out["t2_nbar"] = t2_nbar.value;
    out["t2_nbar_schedule"] = t2_nbar.schedule;
    out["apr_runtime_bound"] = pararm::apr_runtime_bound(beta, n, t2_nbar.value);
    if (delta <= 0.15)
        out["lower_bound"] = pararm::lower_bound_value(delta, c_lambda, tstar.value);

    if (j.contains("deadline")) {
        const double deadline = j.at("deadline").get<double>();
        const int levels = pararm::ceil_log2(std::uint64_t(n));
        const int k = j.contains("k") && j.at("k").is_number_integer()
                          ? j.at("k").get<int>()
                          : pararm::k_star(n, deadline, scaling);
        json xk = json::array();
        for (int kk = 1; kk <= levels; ++kk)
            xk.push_back(pararm::x_of_k(kk, n, deadline, scaling));
        out["deadline"] = deadline;
        out["k"] = k;
        out["k_star"] = pararm::k_star(n, deadline, scaling);
        out["x_of_k"] = xk;
        out["error_bound"] =
            pararm::error_bound(k, n, deadline, scaling, pararm::h2(gapvec));
    }
    std::cout << out.dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"virtual-time best-arm identification under sublinear scaling"};
    app.require_subcommand(1);

    std::string config_path, out_path = "results.csv";
    int jobs = 1;
    bool timings = false;

    auto* run = app.add_subcommand("run", "execute an experiment recipe and write a CSV");
    run->add_option("--config", config_path, "experiment config (JSON)")->required();
    run->add_option("--out", out_path, "output CSV path");
    run->add_option("--jobs", jobs, "worker threads (output is order-stable)");
    run->add_flag("--timings", timings, "write measured wall seconds (breaks byte-identity)");

    auto* analyze = app.add_subcommand("analyze", "print DP values and bounds as JSON");
    analyze->add_option("--config", config_path, "analyze config (JSON)")->required();

    auto* sweep = app.add_subcommand("sweep", "print the expanded experiment grid as JSON");
    sweep->add_option("--config", config_path, "experiment config (JSON)")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, out_path, jobs, timings);
        if (analyze->parsed()) return cmd_analyze(config_path);
        if (sweep->parsed()) return cmd_sweep(config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
