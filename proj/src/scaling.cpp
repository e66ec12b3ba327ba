#include "pararm/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace pararm {

ScalingSpec ScalingSpec::power_law(double q) {
    if (!(q > 0.0) || q > 1.0)
        throw ConfigError("power law exponent must be in (0, 1], got " + std::to_string(q));
    ScalingSpec s;
    s.kind = Kind::power;
    s.q = q;
    return s;
}

ScalingSpec ScalingSpec::linear_scale(double c) {
    if (!(c > 0.0))
        throw ConfigError("linear coefficient must be positive, got " + std::to_string(c));
    ScalingSpec s;
    s.kind = Kind::linear;
    s.c = c;
    return s;
}

ScalingSpec ScalingSpec::amdahl_law(double serial, double parallel) {
    if (serial < 0.0 || serial > 1.0)
        throw ConfigError("amdahl serial fraction must be in [0, 1], got " + std::to_string(serial));
    if (!(parallel > 0.0))
        throw ConfigError("amdahl parallel coefficient must be positive, got " +
                          std::to_string(parallel));
    ScalingSpec s;
    s.kind = Kind::amdahl;
    s.serial = serial;
    s.parallel = parallel;
    return s;
}

ScalingSpec ScalingSpec::tabulated(std::vector<std::pair<double, double>> pts) {
    if (pts.empty() || pts.front().first != 0.0 || pts.front().second != 0.0)
        throw ConfigError("tabulated scaling must start at the knot (0, 0)");
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (!(pts[i].first > pts[i - 1].first) || !(pts[i].second > pts[i - 1].second))
            throw ConfigError("tabulated knots must be strictly increasing in both coordinates");
    }
    if (pts.size() < 2) throw ConfigError("tabulated scaling needs at least one knot beyond (0, 0)");
    ScalingSpec s;
    s.kind = Kind::tabulated;
    s.points = std::move(pts);
    return s;
}

std::string ScalingSpec::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::power: os << "power(q=" << q << ")"; break;
        case Kind::linear: os << "linear(c=" << c << ")"; break;
        case Kind::amdahl: os << "amdahl(serial=" << serial << ",parallel=" << parallel << ")"; break;
        case Kind::tabulated: os << "tabulated(" << points.size() << " knots)"; break;
    }
    return os.str();
}

double evaluate(const ScalingSpec& spec, double m) {
    if (m < 0.0) throw DomainError("scaling function argument must be nonnegative");
    switch (spec.kind) {
        case ScalingSpec::Kind::power:
            return std::pow(m, spec.q);
        case ScalingSpec::Kind::linear:
            return spec.c * m;
        case ScalingSpec::Kind::amdahl:
            return spec.serial * m + spec.parallel * std::sqrt(m);
        case ScalingSpec::Kind::tabulated: {
            const auto& pts = spec.points;
            if (m > pts.back().first)
                throw TabulatedRangeError("tabulated scaling evaluated beyond its last knot");
            auto it = std::lower_bound(pts.begin(), pts.end(), m,
                                       [](const auto& p, double v) { return p.first < v; });
            if (it->first == m) return it->second;
            const auto& hi = *it;
            const auto& lo = *(it - 1);
            const double w = (m - lo.first) / (hi.first - lo.first);
            return lo.second + w * (hi.second - lo.second);
        }
    }
    throw DomainError("unknown scaling kind");
}

namespace {

double inverse_by_bisection(const ScalingSpec& spec, double t, double hi_limit = 0.0) {
    double hi = hi_limit > 0.0 ? hi_limit : 1.0;
    while (evaluate(spec, hi) < t) {
        hi *= 2.0;
        if (hi > 1e300) throw DomainError("scaling inverse bracket diverged");
    }
    double lo = 0.0;
    // lambda is strictly increasing, so plain bisection converges.
    for (int iter = 0; iter < 200 && (hi - lo) > 1e-10 * std::max(1.0, hi); ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (evaluate(spec, mid) < t)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double inverse(const ScalingSpec& spec, double t) {
    if (t < 0.0) throw DomainError("scaling inverse argument must be nonnegative");
    if (t == 0.0) return 0.0;
    switch (spec.kind) {
        case ScalingSpec::Kind::power:
            return std::pow(t, 1.0 / spec.q);
        case ScalingSpec::Kind::linear:
            return t / spec.c;
        case ScalingSpec::Kind::amdahl:
            return inverse_by_bisection(spec, t);
        case ScalingSpec::Kind::tabulated:
            if (t > spec.points.back().second)
                throw TabulatedRangeError("tabulated scaling inverse beyond its last knot");
            return inverse_by_bisection(spec, t, spec.points.back().first);
    }
    throw DomainError("unknown scaling kind");
}

ValidationReport validate(const ScalingSpec& spec, std::span<const double> probe_grid) {
    if (probe_grid.empty()) throw DomainError("probe grid must be non-empty");
    if (!(probe_grid.front() > 0.0)) throw DomainError("probe grid must be positive");
    if (!std::is_sorted(probe_grid.begin(), probe_grid.end()))
        throw DomainError("probe grid must be sorted ascending");

    ValidationReport report;
    constexpr double kTol = 1e-9;

    const double at_zero = evaluate(spec, 0.0);
    if (std::abs(at_zero) > kTol) {
        report.zero_at_zero = false;
        report.violations.push_back({0.0, 0.0, "lambda(0) = " + std::to_string(at_zero)});
    }

    double prev_m = 0.0;
    double prev_v = at_zero;
    double prev_slope = std::numeric_limits<double>::infinity();
    for (double m : probe_grid) {
        const double v = evaluate(spec, m);
        if (v <= prev_v) {
            report.monotone = false;
            report.violations.push_back({prev_m, m, "not strictly increasing"});
        }
        if (m == prev_m) continue;  // duplicate probe: no quotient to take
        const double slope = (v - prev_v) / (m - prev_m);
        if (slope > prev_slope + kTol * std::max(1.0, std::abs(prev_slope))) {
            report.concave = false;
            report.violations.push_back({prev_m, m, "difference quotient increased"});
        }
        prev_slope = slope;
        prev_m = m;
        prev_v = v;
    }

    // Range(lambda) = R+ cannot hold for a profiled curve that refuses
    // extrapolation; analytic families grow without bound.
    if (spec.kind == ScalingSpec::Kind::tabulated) {
        report.surjective_hint = false;
        report.violations.push_back({spec.points.back().first,
                                     std::numeric_limits<double>::infinity(),
                                     "tabulated range ends at t = " +
                                         std::to_string(spec.points.back().second)});
    }
    return report;
}

}  // namespace pararm
