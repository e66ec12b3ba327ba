#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pararm/errors.hpp"

namespace pararm {

/// A known scaling function lambda. lambda(m) is the time taken to execute m
/// simultaneous pulls when the whole divisible resource is split evenly among
/// them. All supported families are increasing and concave with lambda(0) = 0.
struct ScalingSpec {
    enum class Kind { power, linear, amdahl, tabulated };

    Kind kind = Kind::power;
    double q = 0.5;        // power: lambda(m) = m^q, 0 < q <= 1
    double c = 1.0;        // linear: lambda(m) = c*m, c > 0
    double serial = 0.0;   // amdahl: lambda(m) = serial*m + parallel*sqrt(m)
    double parallel = 1.0;
    std::vector<std::pair<double, double>> points;  // tabulated (m, t) knots

    static ScalingSpec power_law(double q);
    static ScalingSpec linear_scale(double c);
    static ScalingSpec amdahl_law(double serial, double parallel);
    // Knots must start at (0,0) and be strictly increasing in both
    // coordinates. Concavity is not enforced here; validate() reports it.
    static ScalingSpec tabulated(std::vector<std::pair<double, double>> pts);

    std::string describe() const;
};

/// lambda(m). Throws DomainError for m < 0 and TabulatedRangeError when a
/// tabulated spec is evaluated beyond its last knot.
double evaluate(const ScalingSpec& spec, double m);

/// The unique m with lambda(m) = t. Closed form for power/linear specs,
/// bracketed bisection to 1e-10 relative tolerance otherwise.
double inverse(const ScalingSpec& spec, double t);

/// Axiom check result. All four flags true exactly when violations is empty.
struct ValidationReport {
    struct Violation {
        double m1;
        double m2;
        std::string detail;
    };
    bool monotone = true;
    bool zero_at_zero = true;
    bool concave = true;
    bool surjective_hint = true;
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
};

/// Probes monotonicity, lambda(0) = 0, and discrete concavity (non-increasing
/// difference quotients) over the given ascending grid of positive abscissae.
/// Violations are reported, never thrown.
ValidationReport validate(const ScalingSpec& spec, std::span<const double> probe_grid);

}  // namespace pararm
