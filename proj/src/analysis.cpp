#include "pararm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pararm/confidence.hpp"
#include "pararm/errors.hpp"

namespace pararm {

namespace {

// z holds pull requirements for ranks 2..n; rank n+1 contributes 0.
double z_at(std::span<const double> z, int rank) {
    const int n = static_cast<int>(z.size()) + 1;
    if (rank == n + 1) return 0.0;
    return z[rank - 2];
}

void check_z(std::span<const double> z) {
    if (z.empty()) throw DomainError("need pull requirements for at least rank 2");
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (!(z[i] > 0.0)) throw DomainError("pull requirements must be positive");
        if (i > 0 && z[i] > z[i - 1])
            throw DomainError("pull requirements must be non-increasing over ranks");
    }
}

}  // namespace

DpSolution dp_tstar(std::span<const double> z, const ScalingSpec& spec) {
    check_z(z);
    const int n = static_cast<int>(z.size()) + 1;

    // values[j-2] = T_j for j = 2..n+1, filled bottom-up.
    std::vector<double> values(n, 0.0);
    std::vector<int> choice(n, 0);
    for (int j = n; j >= 2; --j) {
        double best = std::numeric_limits<double>::infinity();
        int best_k = j;
        for (int k = j; k <= n; ++k) {
            const double cost =
                evaluate(spec, double(k) * (z_at(z, j) - z_at(z, k + 1))) + values[k + 1 - 2];
            if (cost < best) {
                best = cost;
                best_k = k;
            }
        }
        values[j - 2] = best;
        choice[j - 2] = best_k;
    }

    DpSolution solution;
    solution.value = values[0];
    solution.level_values = std::move(values);
    for (int j = 2; j <= n;) {
        const int k = choice[j - 2];
        solution.schedule.push_back(k);
        j = k + 1;
    }
    return solution;
}

double schedule_cost(std::span<const double> z, const ScalingSpec& spec,
                     std::span<const int> schedule) {
    check_z(z);
    const int n = static_cast<int>(z.size()) + 1;
    if (schedule.empty() || schedule.back() != n)
        throw DomainError("schedule must end at rank n");
    double cost = 0.0;
    int j = 2;
    for (int k : schedule) {
        if (k < j || k > n) throw DomainError("schedule breakpoints must be increasing");
        cost += evaluate(spec, double(k) * (z_at(z, j) - z_at(z, k + 1)));
        j = k + 1;
    }
    return cost;
}

double brute_force_tstar(std::span<const double> z, const ScalingSpec& spec) {
    check_z(z);
    const int n = static_cast<int>(z.size()) + 1;
    if (n > 14) throw DomainError("brute force limited to n <= 14");

    // Every schedule is a subset of {2..n-1} plus the mandatory final k = n.
    const int free_levels = n - 2;
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> schedule;
    for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << free_levels); ++mask) {
        schedule.clear();
        for (int b = 0; b < free_levels; ++b)
            if (mask & (std::uint32_t{1} << b)) schedule.push_back(b + 2);
        schedule.push_back(n);
        best = std::min(best, schedule_cost(z, spec, schedule));
    }
    return best;
}

std::vector<std::uint64_t> nbar_vector(const GapVector& gapvec, double delta, int n) {
    if (n < 2) throw DomainError("nbar_vector needs n >= 2");
    if (static_cast<int>(gapvec.deltas.size()) != n)
        throw DomainError("gap vector does not match n");
    const ConfidenceConfig conf{delta, n, 1.0};
    const double omega = conf.omega();
    std::vector<std::uint64_t> out;
    out.reserve(n - 1);
    for (int rank = 2; rank <= n; ++rank) out.push_back(nbar(gapvec.deltas[rank - 1], omega));
    return out;
}

double apr_runtime_bound(double beta, int n, double dp_value_on_nbar) {
    if (!(beta > 1.0)) throw DomainError("beta must exceed 1");
    if (n < 1) throw DomainError("n must be positive");
    const double log_beta_n = std::log(double(n)) / std::log(beta);
    const double factor = 4.0 * std::pow(beta, 3.0 + 4.0 * std::sqrt(log_beta_n)) / (beta - 1.0);
    return factor * dp_value_on_nbar;
}

double lower_bound_value(double delta, double c_lambda, double tstar) {
    if (!(delta > 0.0) || delta > 0.15)
        throw DomainError("lower bound requires delta in (0, 0.15]");
    if (!(c_lambda > 0.0) || c_lambda > 1.0)
        throw DomainError("c_lambda must lie in (0, 1]");
    if (tstar < 0.0) throw DomainError("tstar must be nonnegative");
    return 2.0 * c_lambda * std::log(1.0 / (2.4 * delta)) * tstar;
}

}  // namespace pararm
