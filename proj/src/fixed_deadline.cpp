#include "pararm/fixed_deadline.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "pararm/errors.hpp"

namespace pararm {

int ceil_log2(std::uint64_t n) {
    if (n == 0) throw DomainError("ceil_log2 undefined for 0");
    int level = 0;
    while ((std::uint64_t{1} << level) < n) ++level;
    return level;
}

int ssh_num_stages(int n, int k) {
    if (n < 2) throw DomainError("staged halving needs n >= 2");
    if (k < 1) throw DomainError("k must be at least 1");
    const int levels = ceil_log2(static_cast<std::uint64_t>(n));
    return (levels + k - 1) / k;
}

namespace {

// Floored x(k) kept in extended precision; exact until well past 2^63.
long double x_of_k_wide(int k, int n, double deadline, const ScalingSpec& spec) {
    const int levels = ceil_log2(static_cast<std::uint64_t>(n));
    if (k < 1 || k > levels)
        throw DomainError("k must lie in {1.." + std::to_string(levels) + "}");
    if (!(deadline > 0.0)) throw DomainError("deadline must be positive");

    const int stages = ssh_num_stages(n, k);
    const double pulls = inverse(spec, deadline / stages);
    const long double denom = std::ldexp(1.0L, k * stages) *
                              static_cast<long double>((std::uint64_t{1} << k) - 1);
    return std::floor(static_cast<long double>(pulls) / denom);
}

}  // namespace

std::uint64_t x_of_k(int k, int n, double deadline, const ScalingSpec& spec) {
    const long double value = x_of_k_wide(k, n, deadline, spec);
    if (value >= 1.8e19L) return UINT64_MAX;
    return static_cast<std::uint64_t>(value);
}

int k_star(int n, double deadline, const ScalingSpec& spec) {
    if (n < 2) throw DomainError("k_star needs n >= 2");
    const int levels = ceil_log2(static_cast<std::uint64_t>(n));
    int best_k = 1;
    long double best_x = x_of_k_wide(1, n, deadline, spec);
    for (int k = 2; k <= levels; ++k) {
        const long double x = x_of_k_wide(k, n, deadline, spec);
        if (x > best_x) {
            best_k = k;
            best_x = x;
        }
    }
    return best_k;
}

SshResult run_ssh(const BanditInstance& instance, const ScalingSpec& spec,
                  const SshConfig& config, std::uint64_t seed) {
    const int n = instance.n();
    if (n < 2) throw ConfigError("staged halving needs n >= 2");
    if (!(config.deadline > 0.0)) throw ConfigError("deadline must be positive");
    const int levels = ceil_log2(static_cast<std::uint64_t>(n));
    const int k = config.k == 0 ? k_star(n, config.deadline, spec) : config.k;
    if (k < 1 || k > levels)
        throw ConfigError("k must lie in {1.." + std::to_string(levels) + "}, got " +
                          std::to_string(k));

    const int stages = ssh_num_stages(n, k);
    const double stage_time = config.deadline / stages;
    const std::uint64_t keep_divisor = std::uint64_t{1} << k;

    SshResult result;
    result.k_used = k;
    result.x_k = x_of_k(k, n, config.deadline, spec);

    SimulationLedger ledger(n, seed, config.max_total_pulls);
    std::vector<int> survivors(n);
    std::iota(survivors.begin(), survivors.end(), 0);
    std::vector<double> stage_base(n, 0.0);
    std::vector<PullRequest> requests;

    for (int stage = 0; stage < stages; ++stage) {
        const double ratio = inverse(spec, stage_time) / double(survivors.size());
        if (!(ratio < 9.2e18))
            throw PullCapError("stage pull count left the integer envelope");
        const auto pulls_per_arm = static_cast<std::uint64_t>(std::floor(ratio));
        if (pulls_per_arm == 0)
            throw InfeasibleDeadlineError(
                "stage " + std::to_string(stage) + " of " + std::to_string(stages) +
                    " cannot afford one pull per surviving arm within T/stages = " +
                    std::to_string(stage_time),
                stage);

        if (config.ranking == SshRanking::stage_only)
            for (int i : survivors) stage_base[i] = ledger.reward_sums[i];

        requests.clear();
        for (int i : survivors) requests.push_back({i, pulls_per_arm});
        execute_batch(ledger, instance, spec, requests);

        StageTrace row;
        row.stage = stage;
        row.survivors_in = static_cast<int>(survivors.size());
        row.pulls_per_arm = pulls_per_arm;

        const std::uint64_t keep = (survivors.size() + keep_divisor - 1) / keep_divisor;
        auto score = [&](int i) {
            if (config.ranking == SshRanking::stage_only)
                return (ledger.reward_sums[i] - stage_base[i]) / double(pulls_per_arm);
            return ledger.mean(i);
        };
        std::stable_sort(survivors.begin(), survivors.end(),
                         [&](int a, int b) { return score(a) > score(b); });
        survivors.resize(keep);
        std::sort(survivors.begin(), survivors.end());

        row.survivors_out = static_cast<int>(survivors.size());
        row.virtual_time_cum = ledger.virtual_time;
        result.stage_trace.push_back(row);
    }

    result.best_arm = survivors.front();
    result.virtual_time = ledger.virtual_time;
    return result;
}

SshResult run_sh(const BanditInstance& instance, const ScalingSpec& spec, double deadline,
                 std::uint64_t seed) {
    SshConfig config;
    config.deadline = deadline;
    config.k = 1;
    return run_ssh(instance, spec, config, seed);
}

UcbeResult run_ucbe(const BanditInstance& instance, const ScalingSpec& spec, double deadline,
                    double a, std::uint64_t seed, std::uint64_t max_total_pulls) {
    const int n = instance.n();
    if (n < 1) throw ConfigError("instance has no arms");
    if (a < 0.0) throw ConfigError("UCB-E scale must be nonnegative");
    if (!(deadline > 0.0)) throw ConfigError("deadline must be positive");

    const double pull_cost = evaluate(spec, 1.0);
    if (!(deadline / pull_cost < 9.2e18))
        throw PullCapError("sequential pull budget left the integer envelope");
    const auto budget = static_cast<std::uint64_t>(std::floor(deadline / pull_cost));
    if (budget < static_cast<std::uint64_t>(n))
        throw InfeasibleDeadlineError("deadline of " + std::to_string(deadline) +
                                          " cannot initialize all " + std::to_string(n) + " arms",
                                      0);

    SimulationLedger ledger(n, seed, max_total_pulls);
    for (int i = 0; i < n; ++i) {
        PullRequest req{i, 1};
        execute_batch(ledger, instance, spec, {&req, 1});
    }

    for (std::uint64_t pull = n; pull < budget; ++pull) {
        int pick = 0;
        double best_index = -std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i) {
            const double idx =
                ledger.mean(i) + a / std::sqrt(static_cast<double>(ledger.pull_counts[i]));
            if (idx > best_index) {
                best_index = idx;
                pick = i;
            }
        }
        PullRequest req{pick, 1};
        execute_batch(ledger, instance, spec, {&req, 1});
    }

    UcbeResult result;
    result.pulls = ledger.total_pulls;
    result.virtual_time = ledger.virtual_time;
    result.best_arm = 0;
    for (int i = 1; i < n; ++i)
        if (ledger.mean(i) > ledger.mean(result.best_arm)) result.best_arm = i;
    return result;
}

double h2(const GapVector& gapvec) {
    const auto n = gapvec.deltas.size();
    if (n < 2) throw DomainError("H2 needs at least two arms");
    double value = 0.0;
    for (std::size_t rank = 2; rank <= n; ++rank) {
        const double d = gapvec.deltas[rank - 1];
        if (!(d > 0.0)) throw DomainError("gaps must be positive beyond the best arm");
        value = std::max(value, double(rank) / (d * d));
    }
    return value;
}

double error_bound(int k, int n, double deadline, const ScalingSpec& spec, double h2_value) {
    if (!(h2_value > 0.0)) throw DomainError("H2 must be positive");
    const long double x = x_of_k_wide(k, n, deadline, spec);
    const double levels = ceil_log2(static_cast<std::uint64_t>(n));
    const double bound =
        3.0 * levels * double(std::exp(-static_cast<long double>(n) * x / (8.0L * h2_value)));
    return std::min(1.0, bound);
}

void write_stage_trace_csv(const SshResult& result, std::ostream& out) {
    out << "stage,survivors_in,pulls_per_arm,survivors_out,virtual_time_cum\n";
    for (const StageTrace& row : result.stage_trace) {
        out << row.stage << ',' << row.survivors_in << ',' << row.pulls_per_arm << ','
            << row.survivors_out << ',' << row.virtual_time_cum << '\n';
    }
}

}  // namespace pararm
