#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pararm/environment.hpp"
#include "pararm/scaling.hpp"

namespace pararm {

/// Smallest L with 2^L >= n.
int ceil_log2(std::uint64_t n);

/// Number of stages ceil(log_{2^k}(n)) used by staged sequential halving.
int ssh_num_stages(int n, int k);

/// Per-stage normalized pull count
/// x(k) = floor( lambda^-1(T/s) / (2^{k s} (2^k - 1)) ) with s = ceil(log_{2^k}(n)).
std::uint64_t x_of_k(int k, int n, double deadline, const ScalingSpec& spec);

/// argmax of x(k) over k in {1..ceil_log2(n)}, ties toward smaller k.
int k_star(int n, double deadline, const ScalingSpec& spec);

/// Whether stage survivors are ranked on all samples accumulated so far or on
/// the current stage's samples only.
enum class SshRanking { cumulative, stage_only };

struct SshConfig {
    double deadline = 1.0;
    int k = 0;  // 0 = auto (k_star)
    SshRanking ranking = SshRanking::cumulative;
    std::uint64_t max_total_pulls = 0;
};

struct StageTrace {
    int stage = 0;  // 0-based
    int survivors_in = 0;
    std::uint64_t pulls_per_arm = 0;  // t_r
    int survivors_out = 0;
    double virtual_time_cum = 0.0;
};

struct SshResult {
    int best_arm = -1;
    double virtual_time = 0.0;
    int k_used = 1;
    std::uint64_t x_k = 0;
    std::vector<StageTrace> stage_trace;
};

/// Staged sequential halving: ceil(log_{2^k}(n)) stages of equal time, each
/// pulling every surviving arm floor(lambda^-1(T/stages)/|S|) times in one
/// batch and keeping the ceil(|S|/2^k) arms of highest empirical mean (ties
/// toward lower index). Throws InfeasibleDeadlineError when a stage cannot
/// afford one pull per arm.
SshResult run_ssh(const BanditInstance& instance, const ScalingSpec& spec,
                  const SshConfig& config, std::uint64_t seed);

/// Time-scale sequential halving, i.e. run_ssh with k = 1.
SshResult run_sh(const BanditInstance& instance, const ScalingSpec& spec,
                 double deadline, std::uint64_t seed);

struct UcbeResult {
    int best_arm = -1;
    double virtual_time = 0.0;
    std::uint64_t pulls = 0;
};

/// Sequential UCB-E baseline: one initialization pull per arm, then repeated
/// pulls of argmax mu_hat + a/sqrt(N) (ties toward lower index), each costing
/// lambda(1), until the next pull would exceed the deadline.
UcbeResult run_ucbe(const BanditInstance& instance, const ScalingSpec& spec,
                    double deadline, double a, std::uint64_t seed,
                    std::uint64_t max_total_pulls = 0);

/// Hardness measure H2 = max_{rank i >= 2} i * Delta_i^-2.
double h2(const GapVector& gapvec);

/// Failure-probability bound min(1, 3 ceil(log2 n) exp(-n x(k) / (8 H2))).
double error_bound(int k, int n, double deadline, const ScalingSpec& spec, double h2_value);

/// Columns: stage,survivors_in,pulls_per_arm,survivors_out,virtual_time_cum.
void write_stage_trace_csv(const SshResult& result, std::ostream& out);

}  // namespace pararm
