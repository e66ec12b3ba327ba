#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "pararm/scaling.hpp"

namespace pararm {

struct ArmDistribution {
    enum class Kind { bernoulli, gaussian };
    Kind kind = Kind::bernoulli;
    double mean = 0.0;  // Bernoulli success probability, or Gaussian mean (unit sd)

    static ArmDistribution bernoulli(double p);
    static ArmDistribution gaussian(double mean);
};

struct BanditInstance {
    std::vector<ArmDistribution> arms;

    int n() const { return static_cast<int>(arms.size()); }
    std::vector<double> means() const;
    /// Index of the unique maximizing mean; throws DegenerateInstanceError on a tie.
    int best_arm() const;
};

/// Bernoulli arms with mu_1 = 0.9 and mu_i = 0.9 - delta2 - 0.8*(i-2)/(n-1)
/// for i >= 2, clamped at 0 so every arm stays a valid distribution.
BanditInstance make_linear_gap_instance(int n, double delta2);

/// n Bernoulli arms with i.i.d. Uniform[0,1] means drawn from the seeded
/// stream; redraws on the (measure-zero) event of a tied top mean.
BanditInstance make_uniform_instance(int n, std::uint64_t seed);

/// Gaps keyed by arm rank: deltas[0] = Delta_1 = mu_1 - mu_2 and
/// deltas[r-1] = mu_1 - mu_r for ranks r >= 2. order[r-1] is the arm index
/// holding rank r.
struct GapVector {
    std::vector<double> deltas;
    std::vector<int> order;
};

GapVector gaps(const BanditInstance& instance);

struct PullRequest {
    int arm = 0;
    std::uint64_t count = 0;
};

/// Virtual clock plus per-arm sample statistics for one replication. Batch
/// reward sums are drawn in closed form (binomial / normal), so wall-clock
/// cost scales with the number of batches, not the number of pulls.
struct SimulationLedger {
    double virtual_time = 0.0;
    std::vector<std::uint64_t> pull_counts;
    std::vector<double> reward_sums;
    std::uint64_t total_pulls = 0;
    std::uint64_t pull_cap = 0;  // 0 = unlimited; exceeding throws PullCapError
    std::mt19937_64 rng;

    SimulationLedger(int n_arms, std::uint64_t seed, std::uint64_t cap = 0);

    double mean(int arm) const;
};

/// Draws the requested samples as one simultaneous batch, advances the clock
/// by lambda(total count) and returns that elapsed amount. Requests are
/// processed in the order given; an empty request list is a no-op returning 0.
double execute_batch(SimulationLedger& ledger, const BanditInstance& instance,
                     const ScalingSpec& spec, std::span<const PullRequest> requests);

/// Reproducibility dump: {"kind": "...", "means": [...]}.
std::string instance_to_json(const BanditInstance& instance);
BanditInstance instance_from_json(const std::string& text);

}  // namespace pararm
