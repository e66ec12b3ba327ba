#include "pararm/confidence.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "pararm/errors.hpp"

namespace pararm {

namespace {

constexpr double kOmegaMax = 0.40824829046386301637;  // sqrt(1/6)

void check_omega(double omega) {
    if (!(omega > 0.0) || !(omega < kOmegaMax))
        throw ConfigError("omega must lie in (0, sqrt(1/6)), got " + std::to_string(omega));
}

}  // namespace

double ConfidenceConfig::omega() const {
    if (!(delta > 0.0) || !(delta < 1.0))
        throw ConfigError("delta must lie in (0, 1), got " + std::to_string(delta));
    if (n < 1) throw ConfigError("confidence config needs n >= 1");
    return std::sqrt(delta / (6.0 * n));
}

double deviation(std::uint64_t count, double omega) {
    if (count == 0) throw DomainError("deviation undefined for zero samples");
    check_omega(omega);
    const double n = static_cast<double>(count);
    return std::sqrt(4.0 * std::log(std::log2(2.0 * n) / omega) / n);
}

const IntervalSet::Entry& IntervalSet::at(int arm) const {
    if (arm < 0 || arm >= static_cast<int>(arms.size()))
        throw DomainError("arm index out of range");
    if (arms[arm].count == 0) throw DomainError("interval queried for an unsampled arm");
    return arms[arm];
}

IntervalSet intervals(const SimulationLedger& ledger, const ConfidenceConfig& config) {
    if (!(config.deviation_scale > 0.0))
        throw ConfigError("deviation_scale must be positive");
    const double omega = config.omega();
    IntervalSet set;
    set.arms.resize(ledger.pull_counts.size());
    for (std::size_t i = 0; i < ledger.pull_counts.size(); ++i) {
        const std::uint64_t count = ledger.pull_counts[i];
        auto& entry = set.arms[i];
        entry.count = count;
        if (count == 0) {
            entry.mean_estimate = std::numeric_limits<double>::quiet_NaN();
            entry.lower = -std::numeric_limits<double>::infinity();
            entry.upper = std::numeric_limits<double>::infinity();
            continue;
        }
        const double mu = ledger.reward_sums[i] / static_cast<double>(count);
        const double radius = config.deviation_scale * deviation(count, omega);
        entry.mean_estimate = mu;
        entry.lower = mu - radius;
        entry.upper = mu + radius;
    }
    return set;
}

std::uint64_t nbar(double delta_i, double omega) {
    if (!(delta_i > 0.0)) throw DomainError("gap must be positive");
    check_omega(omega);
    const double inv_sq = 1.0 / (delta_i * delta_i);
    const double value = 64.0 * inv_sq * std::log((2.0 / omega) * std::log2(192.0 * inv_sq / omega));
    return 1 + static_cast<std::uint64_t>(std::floor(value));
}

}  // namespace pararm
