#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pararm/environment.hpp"
#include "pararm/scaling.hpp"

namespace pararm {

/// Solution of the planner's dynamic program over pull requirements
/// z_2 >= z_3 >= ... >= z_n > 0 (z_{n+1} = 0):
///   T_j = min_{k in {j..n}} lambda(k (z_j - z_{k+1})) + T_{k+1}.
struct DpSolution {
    double value = 0.0;               // T_2
    std::vector<int> schedule;        // chosen k at each visited level, ends at n
    std::vector<double> level_values; // T_j for j = 2..n+1 (level_values[j-2])
};

/// Exact bottom-up evaluation in O(n^2) lambda calls. Ties in the min break
/// toward smaller k. z must be non-increasing and positive (DomainError).
DpSolution dp_tstar(std::span<const double> z, const ScalingSpec& spec);

/// Cost of one explicit elimination schedule (strictly increasing k choices
/// ending at n), replayed through the recursion above.
double schedule_cost(std::span<const double> z, const ScalingSpec& spec,
                     std::span<const int> schedule);

/// Independent oracle: enumerate all 2^(n-2) breakpoint schedules and return
/// the cheapest cost. Limited to n <= 14.
double brute_force_tstar(std::span<const double> z, const ScalingSpec& spec);

/// {N_bar_i} for ranks 2..n at omega = sqrt(delta/(6n)).
std::vector<std::uint64_t> nbar_vector(const GapVector& gapvec, double delta, int n);

/// 4 beta^(3 + 4 sqrt(log_beta n)) / (beta - 1) * dp_value_on_nbar.
double apr_runtime_bound(double beta, int n, double dp_value_on_nbar);

/// Expected-time hardness value 2 c_lambda log(1/(2.4 delta)) * tstar,
/// valid for delta in (0, 0.15].
double lower_bound_value(double delta, double c_lambda, double tstar);

}  // namespace pararm
