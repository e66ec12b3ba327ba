#pragma once

#include <cstdint>
#include <vector>

#include "pararm/environment.hpp"

namespace pararm {

struct ConfidenceConfig {
    double delta = 0.1;
    int n = 1;
    double deviation_scale = 1.0;

    /// omega = sqrt(delta / (6n)), always inside (0, sqrt(1/6)) for valid delta.
    double omega() const;
};

/// Iterated-logarithm deviation D(N, omega) = sqrt(4 log(log2(2N)/omega) / N).
/// Strictly positive and decreasing in N for fixed omega.
double deviation(std::uint64_t count, double omega);

struct IntervalSet {
    struct Entry {
        double lower = 0.0;
        double upper = 0.0;
        double mean_estimate = 0.0;
        std::uint64_t count = 0;
    };
    std::vector<Entry> arms;

    /// Throws DomainError when the arm has no samples yet.
    const Entry& at(int arm) const;
};

/// Per-arm intervals mu_hat -+ deviation_scale * D(N_i, omega) from the
/// ledger's cumulative counts. Arms with zero samples get a placeholder entry
/// that throws on access.
IntervalSet intervals(const SimulationLedger& ledger, const ConfidenceConfig& config);

/// High-probability per-arm sample-complexity constant
/// 1 + floor(64 d^-2 log((2/omega) log2(192 d^-2 / omega))).
std::uint64_t nbar(double delta_i, double omega);

}  // namespace pararm
