#include "pararm/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <json.hpp>

#include "pararm/errors.hpp"

namespace pararm {

ArmDistribution ArmDistribution::bernoulli(double p) {
    if (p < 0.0 || p > 1.0)
        throw ConfigError("Bernoulli mean must be in [0, 1], got " + std::to_string(p));
    return {Kind::bernoulli, p};
}

ArmDistribution ArmDistribution::gaussian(double mean) { return {Kind::gaussian, mean}; }

std::vector<double> BanditInstance::means() const {
    std::vector<double> out(arms.size());
    std::transform(arms.begin(), arms.end(), out.begin(),
                   [](const ArmDistribution& a) { return a.mean; });
    return out;
}

int BanditInstance::best_arm() const {
    if (arms.empty()) throw DomainError("instance has no arms");
    int best = 0;
    for (int i = 1; i < n(); ++i)
        if (arms[i].mean > arms[best].mean) best = i;
    for (int i = 0; i < n(); ++i)
        if (i != best && arms[i].mean == arms[best].mean)
            throw DegenerateInstanceError("best arm is not unique");
    return best;
}

BanditInstance make_linear_gap_instance(int n, double delta2) {
    if (n < 2) throw ConfigError("linear-gap instance needs n >= 2");
    if (!(delta2 > 0.0) || delta2 > 0.8)
        throw ConfigError("linear-gap delta2 must be in (0, 0.8], got " + std::to_string(delta2));
    BanditInstance instance;
    instance.arms.reserve(n);
    instance.arms.push_back(ArmDistribution::bernoulli(0.9));
    for (int i = 2; i <= n; ++i) {
        const double mu = 0.9 - delta2 - 0.8 * double(i - 2) / double(n - 1);
        instance.arms.push_back(ArmDistribution::bernoulli(std::max(0.0, mu)));
    }
    return instance;
}

BanditInstance make_uniform_instance(int n, std::uint64_t seed) {
    if (n < 2) throw ConfigError("uniform instance needs n >= 2");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (;;) {
        std::vector<double> means(n);
        for (double& m : means) m = unif(rng);
        const double top = *std::max_element(means.begin(), means.end());
        if (std::count(means.begin(), means.end(), top) != 1) continue;  // measure-zero tie
        BanditInstance instance;
        instance.arms.reserve(n);
        for (double m : means) instance.arms.push_back(ArmDistribution::bernoulli(m));
        return instance;
    }
}

GapVector gaps(const BanditInstance& instance) {
    const int n = instance.n();
    if (n < 1) throw DomainError("instance has no arms");
    instance.best_arm();  // uniqueness check

    GapVector gv;
    gv.order.resize(n);
    std::iota(gv.order.begin(), gv.order.end(), 0);
    const auto mu = instance.means();
    std::stable_sort(gv.order.begin(), gv.order.end(),
                     [&](int a, int b) { return mu[a] > mu[b]; });

    gv.deltas.resize(n);
    const double mu1 = mu[gv.order[0]];
    for (int r = 2; r <= n; ++r) gv.deltas[r - 1] = mu1 - mu[gv.order[r - 1]];
    gv.deltas[0] = n >= 2 ? gv.deltas[1] : 0.0;  // Delta_1 = Delta_2
    return gv;
}

SimulationLedger::SimulationLedger(int n_arms, std::uint64_t seed, std::uint64_t cap)
    : pull_counts(n_arms, 0), reward_sums(n_arms, 0.0), pull_cap(cap), rng(seed) {
    if (n_arms < 1) throw ConfigError("ledger needs at least one arm");
}

double SimulationLedger::mean(int arm) const {
    if (arm < 0 || arm >= static_cast<int>(pull_counts.size()))
        throw DomainError("arm index out of range");
    if (pull_counts[arm] == 0) throw DomainError("arm has no samples");
    return reward_sums[arm] / static_cast<double>(pull_counts[arm]);
}

double execute_batch(SimulationLedger& ledger, const BanditInstance& instance,
                     const ScalingSpec& spec, std::span<const PullRequest> requests) {
    if (requests.empty()) return 0.0;

    std::uint64_t total = 0;
    for (const PullRequest& req : requests) {
        if (req.arm < 0 || req.arm >= instance.n()) throw DomainError("pull request arm out of range");
        if (req.count == 0) throw DomainError("pull request count must be positive");
        total += req.count;
    }
    if (ledger.pull_cap != 0 && ledger.total_pulls + total > ledger.pull_cap)
        throw PullCapError("simulated pull cap of " + std::to_string(ledger.pull_cap) +
                           " exceeded");

    for (const PullRequest& req : requests) {
        const ArmDistribution& arm = instance.arms[req.arm];
        double sum = 0.0;
        if (arm.kind == ArmDistribution::Kind::bernoulli) {
            if (arm.mean >= 1.0) {
                sum = static_cast<double>(req.count);
            } else if (arm.mean > 0.0) {
                std::binomial_distribution<long long> bin(static_cast<long long>(req.count),
                                                          arm.mean);
                sum = static_cast<double>(bin(ledger.rng));
            }
        } else {
            std::normal_distribution<double> normal(
                static_cast<double>(req.count) * arm.mean,
                std::sqrt(static_cast<double>(req.count)));
            sum = normal(ledger.rng);
        }
        ledger.reward_sums[req.arm] += sum;
        ledger.pull_counts[req.arm] += req.count;
    }
    ledger.total_pulls += total;

    const double elapsed = evaluate(spec, static_cast<double>(total));
    ledger.virtual_time += elapsed;
    return elapsed;
}

std::string instance_to_json(const BanditInstance& instance) {
    nlohmann::json j;
    bool gaussian = !instance.arms.empty() &&
                    instance.arms.front().kind == ArmDistribution::Kind::gaussian;
    j["kind"] = gaussian ? "gaussian" : "bernoulli";
    j["means"] = instance.means();
    return j.dump();
}

BanditInstance instance_from_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    const auto means = j.at("means").get<std::vector<double>>();
    BanditInstance instance;
    instance.arms.reserve(means.size());
    for (double m : means) {
        instance.arms.push_back(kind == "gaussian" ? ArmDistribution::gaussian(m)
                                                   : ArmDistribution::bernoulli(m));
    }
    return instance;
}

}  // namespace pararm
