#include "pararm/fixed_confidence.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <iostream>
#include <numeric>
#include <ostream>

#include "pararm/confidence.hpp"
#include "pararm/errors.hpp"

namespace pararm {

namespace {

void check_racing_params(double delta, double deviation_scale) {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw ConfigError("delta must lie in (0, 1), got " + std::to_string(delta));
    if (!(deviation_scale > 0.0)) throw ConfigError("deviation_scale must be positive");
}

// Removes from survivors every arm whose UCB falls strictly below the highest
// surviving LCB; appends the removed arms to eliminated. If a numerical freak
// empties the set, the arm with the highest empirical mean is retained.
void eliminate(std::vector<int>& survivors, const IntervalSet& set,
               std::vector<int>& eliminated) {
    double max_lcb = -std::numeric_limits<double>::infinity();
    for (int i : survivors) max_lcb = std::max(max_lcb, set.at(i).lower);

    std::vector<int> kept;
    kept.reserve(survivors.size());
    for (int i : survivors) {
        if (set.at(i).upper < max_lcb)
            eliminated.push_back(i);
        else
            kept.push_back(i);
    }
    if (kept.empty()) {
        int best = survivors.front();
        for (int i : survivors)
            if (set.at(i).mean_estimate > set.at(best).mean_estimate) best = i;
        kept.push_back(best);
        std::erase(eliminated, best);
    }
    survivors = std::move(kept);
}

}  // namespace

AprResult run_apr(const BanditInstance& instance, const ScalingSpec& spec,
                  const AprConfig& config, std::uint64_t seed) {
    const int n = instance.n();
    if (n < 1) throw ConfigError("instance has no arms");
    if (!(config.beta > 1.0)) throw ConfigError("beta must exceed 1");
    check_racing_params(config.delta, config.deviation_scale);
    if (config.max_rounds < 1) throw ConfigError("max_rounds must be at least 1");

    AprResult result;
    if (n == 1) {
        result.best_arm = 0;
        return result;
    }
    if (config.beta > n)
        std::cerr << "warning: beta=" << config.beta << " above n=" << n
                  << " leaves the analyzed regime\n";

    SimulationLedger ledger(n, seed, config.max_total_pulls);
    const ConfidenceConfig conf{config.delta, n, config.deviation_scale};
    std::vector<int> survivors(n);
    std::iota(survivors.begin(), survivors.end(), 0);

    const double t1 = evaluate(spec, static_cast<double>(n));
    std::vector<PullRequest> requests;
    for (int round = 1; survivors.size() > 1; ++round) {
        if (round > config.max_rounds)
            throw BudgetExhaustedError("max_rounds of " + std::to_string(config.max_rounds) +
                                           " exhausted before a single survivor remained",
                                       std::move(result));

        const double t_r = std::pow(config.beta, round - 1) * t1;
        // t_r >= lambda(n) >= lambda(|S|) guarantees q_r >= 1; the 1e-9 slack
        // only absorbs round-off in lambda^-1(lambda(n)).
        const double ratio = inverse(spec, t_r) * (1.0 + 1e-9) / double(survivors.size());
        if (!(ratio < 9.2e18))
            throw BudgetExhaustedError("per-arm pull count left the integer envelope",
                                       std::move(result));
        const auto q_r = static_cast<std::uint64_t>(std::floor(ratio));
        assert(q_r >= 1 && "per-arm pull count must be positive");

        requests.clear();
        for (int i : survivors) requests.push_back({i, q_r});
        execute_batch(ledger, instance, spec, requests);

        result.rounds = round;
        result.allocated_time += t_r;
        result.virtual_time = ledger.virtual_time;

        RoundTrace row;
        row.round = round;
        row.allocated = t_r;
        row.survivors = static_cast<int>(survivors.size());
        row.pulls_per_arm = q_r;
        const IntervalSet set = intervals(ledger, conf);
        eliminate(survivors, set, row.eliminated);
        row.virtual_time_cum = ledger.virtual_time;
        result.trace.push_back(std::move(row));
    }

    result.best_arm = survivors.front();
    result.virtual_time = ledger.virtual_time;
    return result;
}

AprResult run_batch_racing(const BanditInstance& instance, const ScalingSpec& spec,
                           const BatchRacingConfig& config, std::uint64_t seed) {
    const int n = instance.n();
    if (n < 1) throw ConfigError("instance has no arms");
    if (config.batch_size < 1) throw ConfigError("batch_size must be at least 1");
    check_racing_params(config.delta, config.deviation_scale);

    AprResult result;
    if (n == 1) {
        result.best_arm = 0;
        return result;
    }

    SimulationLedger ledger(n, seed, config.max_total_pulls);
    const ConfidenceConfig conf{config.delta, n, config.deviation_scale};
    std::vector<int> survivors(n);
    std::iota(survivors.begin(), survivors.end(), 0);

    std::vector<int> selected;
    std::vector<PullRequest> requests;
    for (std::uint64_t batch = 1; survivors.size() > 1; ++batch) {
        if (batch > config.max_batches)
            throw BudgetExhaustedError("max_batches of " + std::to_string(config.max_batches) +
                                           " exhausted before a single survivor remained",
                                       std::move(result));

        const auto k = std::min<std::size_t>(config.batch_size, survivors.size());
        selected = survivors;
        std::stable_sort(selected.begin(), selected.end(), [&](int a, int b) {
            return ledger.pull_counts[a] < ledger.pull_counts[b];
        });
        selected.resize(k);
        std::sort(selected.begin(), selected.end());

        requests.clear();
        for (int i : selected) requests.push_back({i, 1});
        const double elapsed = execute_batch(ledger, instance, spec, requests);

        result.rounds = static_cast<int>(batch);
        result.allocated_time += elapsed;
        result.virtual_time = ledger.virtual_time;

        RoundTrace row;
        row.round = static_cast<int>(batch);
        row.allocated = elapsed;
        row.survivors = static_cast<int>(survivors.size());
        row.pulls_per_arm = 1;
        const bool all_sampled = std::all_of(survivors.begin(), survivors.end(), [&](int i) {
            return ledger.pull_counts[i] >= 1;
        });
        if (all_sampled) {
            const IntervalSet set = intervals(ledger, conf);
            eliminate(survivors, set, row.eliminated);
        }
        row.virtual_time_cum = ledger.virtual_time;
        result.trace.push_back(std::move(row));
    }

    result.best_arm = survivors.front();
    result.virtual_time = ledger.virtual_time;
    return result;
}

void write_trace_csv(const AprResult& result, std::ostream& out) {
    out << "round,t_r,survivors,q_r,virtual_time_cum,eliminated_list\n";
    for (const RoundTrace& row : result.trace) {
        out << row.round << ',' << row.allocated << ',' << row.survivors << ','
            << row.pulls_per_arm << ',' << row.virtual_time_cum << ',';
        for (std::size_t i = 0; i < row.eliminated.size(); ++i) {
            if (i) out << ';';
            out << row.eliminated[i];
        }
        out << '\n';
    }
}

}  // namespace pararm
