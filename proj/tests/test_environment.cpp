#include <doctest.h>

#include <cmath>
#include <vector>

#include "pararm/environment.hpp"

using namespace pararm;

TEST_CASE("linear-gap instances follow the interpolation formula") {
    const auto inst = make_linear_gap_instance(16, 0.01);
    const auto mu = inst.means();
    CHECK(mu[0] == 0.9);
    CHECK(mu[1] == doctest::Approx(0.89).epsilon(1e-12));
    CHECK(mu[2] == doctest::Approx(0.89 - 0.8 / 15.0).epsilon(1e-12));  // 0.8366666...

    CHECK(make_linear_gap_instance(16, 0.5).means()[1] == doctest::Approx(0.4).epsilon(1e-12));

    const auto two = make_linear_gap_instance(2, 0.3);
    CHECK(two.means()[0] == doctest::Approx(0.9));
    CHECK(two.means()[1] == doctest::Approx(0.6));

    // Tail means that would go negative are clamped to valid distributions.
    const auto wide = make_linear_gap_instance(16, 0.5);
    CHECK(wide.means().back() == 0.0);

    CHECK_THROWS_AS(make_linear_gap_instance(1, 0.1), ConfigError);
    CHECK_THROWS_AS(make_linear_gap_instance(4, 0.0), ConfigError);
    CHECK_THROWS_AS(make_linear_gap_instance(4, 0.81), ConfigError);
}

TEST_CASE("uniform instances are deterministic and in range") {
    const auto a = make_uniform_instance(1024, 7);
    const auto b = make_uniform_instance(1024, 7);
    CHECK(a.means() == b.means());
    for (double m : a.means()) {
        CHECK(m >= 0.0);
        CHECK(m <= 1.0);
    }
    CHECK(make_uniform_instance(1024, 8).means() != a.means());
}

TEST_CASE("uniform best-arm index is unbiased across seeds") {
    int first = 0;
    const int sweeps = 1000;
    for (int seed = 0; seed < sweeps; ++seed)
        if (make_uniform_instance(2, seed).best_arm() == 0) ++first;
    const double expected = sweeps / 2.0;
    const double chi2 = (first - expected) * (first - expected) / expected +
                        (sweeps - first - expected) * (sweeps - first - expected) / expected;
    CHECK(chi2 < 6.635);  // chi-square(1) critical value at p = 0.01
}

TEST_CASE("gaps rank arms and subtract means") {
    BanditInstance inst;
    for (double m : {0.9, 0.6, 0.1}) inst.arms.push_back(ArmDistribution::bernoulli(m));
    const auto gv = gaps(inst);
    REQUIRE(gv.deltas.size() == 3);
    CHECK(gv.deltas[0] == doctest::Approx(0.3));
    CHECK(gv.deltas[1] == doctest::Approx(0.3));
    CHECK(gv.deltas[2] == doctest::Approx(0.8));
    CHECK(gv.deltas[0] == gv.deltas[1]);
    CHECK(gv.order == std::vector<int>{0, 1, 2});

    BanditInstance tied;
    tied.arms.push_back(ArmDistribution::bernoulli(0.5));
    tied.arms.push_back(ArmDistribution::bernoulli(0.5));
    CHECK_THROWS_AS(gaps(tied), DegenerateInstanceError);

    BanditInstance close;
    close.arms.push_back(ArmDistribution::bernoulli(0.89));
    close.arms.push_back(ArmDistribution::bernoulli(0.9));
    const auto gv2 = gaps(close);
    CHECK(gv2.deltas[1] == doctest::Approx(0.01));
    CHECK(gv2.order == std::vector<int>{1, 0});

    const auto big = gaps(make_uniform_instance(64, 10));
    for (std::size_t r = 2; r < big.deltas.size(); ++r)
        CHECK(big.deltas[r] >= big.deltas[r - 1]);  // non-decreasing over ranks
    CHECK(big.deltas[2] > 0.0);
}

TEST_CASE("execute_batch advances the virtual clock by lambda of the batch size") {
    const auto inst = make_linear_gap_instance(4, 0.2);
    const auto spec = ScalingSpec::power_law(0.5);
    SimulationLedger ledger(4, 11);

    std::vector<PullRequest> reqs{{0, 16}, {1, 16}, {2, 16}, {3, 16}};
    CHECK(execute_batch(ledger, inst, spec, reqs) == doctest::Approx(8.0));  // lambda(64)
    CHECK(ledger.virtual_time == doctest::Approx(8.0));
    CHECK(ledger.total_pulls == 64);
    CHECK(ledger.pull_counts[2] == 16);

    CHECK(execute_batch(ledger, inst, spec, {}) == 0.0);
    CHECK(ledger.total_pulls == 64);

    // Splitting a batch costs more: 2 * lambda(32) > lambda(64).
    SimulationLedger split(4, 11);
    std::vector<PullRequest> half{{0, 8}, {1, 8}, {2, 8}, {3, 8}};
    execute_batch(split, inst, spec, half);
    execute_batch(split, inst, spec, half);
    CHECK(split.virtual_time == doctest::Approx(11.3137084989847604));
    CHECK(split.virtual_time > 8.0);

    std::vector<PullRequest> bad{{7, 1}};
    CHECK_THROWS_AS(execute_batch(ledger, inst, spec, bad), DomainError);
    std::vector<PullRequest> zero{{0, 0}};
    CHECK_THROWS_AS(execute_batch(ledger, inst, spec, zero), DomainError);
}

TEST_CASE("identical seed and request sequence reproduces the ledger exactly") {
    const auto inst = make_uniform_instance(8, 3);
    const auto spec = ScalingSpec::power_law(0.5);
    SimulationLedger a(8, 99), b(8, 99);
    std::vector<PullRequest> reqs;
    for (int round = 0; round < 5; ++round) {
        reqs.clear();
        for (int i = 0; i < 8; ++i) reqs.push_back({i, std::uint64_t(1) << round});
        execute_batch(a, inst, spec, reqs);
        execute_batch(b, inst, spec, reqs);
    }
    CHECK(a.reward_sums == b.reward_sums);
    CHECK(a.pull_counts == b.pull_counts);
    CHECK(a.virtual_time == b.virtual_time);
}

TEST_CASE("virtual time equals the straight sum of per-batch costs") {
    const auto inst = make_uniform_instance(4, 5);
    const auto spec = ScalingSpec::amdahl_law(0.2, 1.0);
    SimulationLedger ledger(4, 17);
    double total = 0.0;
    for (std::uint64_t c : {3, 1, 10, 64, 7}) {
        std::vector<PullRequest> reqs{{0, c}, {3, c}};
        total += execute_batch(ledger, inst, spec, reqs);
    }
    CHECK(ledger.virtual_time == total);
}

TEST_CASE("empirical means concentrate around the true means") {
    BanditInstance inst;
    inst.arms.push_back(ArmDistribution::bernoulli(0.37));
    inst.arms.push_back(ArmDistribution::gaussian(-0.25));
    const auto spec = ScalingSpec::linear_scale(1.0);
    SimulationLedger ledger(2, 424242);
    const std::uint64_t pulls = 200000;
    std::vector<PullRequest> reqs{{0, pulls}, {1, pulls}};
    execute_batch(ledger, inst, spec, reqs);
    const double margin = 4.0 * std::sqrt(0.25 / double(pulls));
    CHECK(std::abs(ledger.mean(0) - 0.37) < margin);
    CHECK(std::abs(ledger.mean(1) + 0.25) < 4.0 * std::sqrt(1.0 / double(pulls)));
}

TEST_CASE("pull cap aborts oversized runs") {
    const auto inst = make_uniform_instance(2, 1);
    const auto spec = ScalingSpec::linear_scale(1.0);
    SimulationLedger ledger(2, 5, 100);
    std::vector<PullRequest> ok{{0, 60}};
    execute_batch(ledger, inst, spec, ok);
    std::vector<PullRequest> too_much{{1, 50}};
    CHECK_THROWS_AS(execute_batch(ledger, inst, spec, too_much), PullCapError);
    CHECK(ledger.total_pulls == 60);  // rejected batch left no trace
}

TEST_CASE("instance JSON round trip") {
    const auto inst = make_linear_gap_instance(5, 0.25);
    const auto text = instance_to_json(inst);
    const auto back = instance_from_json(text);
    CHECK(back.means() == inst.means());
    CHECK(back.arms[0].kind == ArmDistribution::Kind::bernoulli);
}
