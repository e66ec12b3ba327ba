#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "pararm/environment.hpp"
#include "pararm/scaling.hpp"

namespace pararm {

struct AprConfig {
    double beta = 2.0;   // round r is allocated beta^(r-1) * lambda(n) time
    double delta = 0.1;
    double deviation_scale = 1.0;
    int max_rounds = 64;
    std::uint64_t max_total_pulls = 0;  // 0 = unlimited
};

struct RoundTrace {
    int round = 0;                    // 1-based
    double allocated = 0.0;           // t_r
    int survivors = 0;                // |S_r| entering the round
    std::uint64_t pulls_per_arm = 0;  // q_r
    double virtual_time_cum = 0.0;
    std::vector<int> eliminated;      // arms removed at the end of the round
};

struct AprResult {
    int best_arm = -1;
    double virtual_time = 0.0;    // sum of lambda(q_r * |S_r|)
    double allocated_time = 0.0;  // sum of t_r
    int rounds = 0;
    std::vector<RoundTrace> trace;
};

/// Safety cap (max_rounds / max_batches) hit before a single survivor
/// remained; carries everything executed so far.
struct BudgetExhaustedError : std::runtime_error {
    AprResult partial;
    BudgetExhaustedError(const std::string& msg, AprResult partial_result)
        : std::runtime_error(msg), partial(std::move(partial_result)) {}
};

/// Adaptive parallel racing: geometrically growing per-round time budgets,
/// one batch of q_r = floor(lambda^-1(t_r)/|S_r|) pulls per surviving arm,
/// elimination of arms whose upper confidence bound falls below the highest
/// lower confidence bound. Runs until a single arm survives.
AprResult run_apr(const BanditInstance& instance, const ScalingSpec& spec,
                  const AprConfig& config, std::uint64_t seed);

struct BatchRacingConfig {
    int batch_size = 1;
    double delta = 0.1;
    double deviation_scale = 1.0;
    std::uint64_t max_batches = 1000000;
    std::uint64_t max_total_pulls = 0;
};

/// Fixed-parallelism baseline: each batch pulls the min(batch_size, |S|)
/// least-pulled surviving arms once (ties toward lower index) at cost
/// lambda(batch size), with the same interval-based elimination as APR.
AprResult run_batch_racing(const BanditInstance& instance, const ScalingSpec& spec,
                           const BatchRacingConfig& config, std::uint64_t seed);

/// Columns: round,t_r,survivors,q_r,virtual_time_cum,eliminated_list
/// (eliminated arm indices joined with ';').
void write_trace_csv(const AprResult& result, std::ostream& out);

}  // namespace pararm
