#include <doctest.h>

#include <fstream>
#include <sstream>

#include "pararm/harness.hpp"
#include "pararm/seeding.hpp"

using namespace pararm;

namespace {

const char* kFixedConfidenceConfig = R"json({
  "experiment": "smoke_fc",
  "setting": "fixed_confidence",
  "instance": {"kind": "linear_gap", "n": 8, "delta2": [0.3, 0.5]},
  "scaling": {"kind": "power", "q": 0.5},
  "algorithms": [
    {"name": "apr", "beta": 2.0, "delta": 0.1, "deviation_scale": 0.2},
    {"name": "batch_racing", "batch_size": 4, "delta": 0.1, "deviation_scale": 0.2}
  ],
  "replications": 3,
  "base_seed": 99
})json";

const char* kFixedDeadlineConfig = R"json({
  "experiment": "smoke_fd",
  "setting": "fixed_deadline",
  "instance": {"kind": "uniform", "n": 16, "seed": 5},
  "scaling": {"kind": "power", "q": 0.5},
  "algorithms": [
    {"name": "ssh", "k": "auto", "deadline": [64.0, 128.0]},
    {"name": "sh", "deadline": [64.0]},
    {"name": "ucbe", "a": 1.0, "deadline": [64.0]}
  ],
  "replications": 2,
  "base_seed": 7
})json";

}  // namespace

TEST_CASE("child seeds are a fixed function of base and index") {
    // frozen values pin the documented mixing constants
    CHECK(child_seed(0, 0) == child_seed(0, 0));
    CHECK(child_seed(0, 0) != child_seed(0, 1));
    CHECK(child_seed(0, 0) != child_seed(1, 0));
    const std::uint64_t a = child_seed(20210607, 0);
    const std::uint64_t b = child_seed(20210607, 1);
    CHECK(a != b);
    // SplitMix64 finalizer of (base ^ golden * (i+1)), computed independently
    auto mix = [](std::uint64_t z) {
        z ^= z >> 30; z *= 0xBF58476D1CE4E5B9ULL;
        z ^= z >> 27; z *= 0x94D049BB133111EBULL;
        z ^= z >> 31; return z;
    };
    CHECK(a == mix(20210607ULL ^ 0x9E3779B97F4A7C15ULL));
}

TEST_CASE("grid expansion is deterministic and complete") {
    const auto config = parse_experiment_config(kFixedConfidenceConfig);
    const auto cells = expand_grid(config);
    REQUIRE(cells.size() == 4);  // 2 delta2 x 2 algorithms
    CHECK(cells[0].experiment == "smoke_fc/d2=0.3");
    CHECK(cells[0].algorithm == "apr");
    CHECK(cells[0].params == "beta=2;delta=0.1;scale=0.2");
    CHECK(cells[1].algorithm == "batch_racing");
    CHECK(cells[1].params == "m=4;delta=0.1;scale=0.2");
    CHECK(cells[2].experiment == "smoke_fc/d2=0.5");

    const auto fd = expand_grid(parse_experiment_config(kFixedDeadlineConfig));
    REQUIRE(fd.size() == 4);  // ssh x 2 deadlines + sh + ucbe
    CHECK(fd[0].params == "k=auto;T=64");
    CHECK(fd[1].params == "k=auto;T=128");
    CHECK(fd[2].algorithm == "sh");
    CHECK(fd[3].algorithm == "ucbe");
}

TEST_CASE("config validation rejects malformed input") {
    CHECK_THROWS_AS(parse_experiment_config("not json"), ConfigError);
    CHECK_THROWS_AS(parse_experiment_config(R"({"setting": "nope"})"), ConfigError);
    // wrong-setting algorithm
    CHECK_THROWS_AS(parse_experiment_config(R"json({
        "setting": "fixed_confidence",
        "instance": {"kind": "uniform", "n": 4, "seed": 1},
        "scaling": {"kind": "power", "q": 0.5},
        "algorithms": [{"name": "ssh", "deadline": 4.0}],
        "replications": 1, "base_seed": 1
    })json"), ConfigError);
    // invalid delta
    CHECK_THROWS_AS(parse_experiment_config(R"json({
        "setting": "fixed_confidence",
        "instance": {"kind": "uniform", "n": 4, "seed": 1},
        "scaling": {"kind": "power", "q": 0.5},
        "algorithms": [{"name": "apr", "delta": 1.5}],
        "replications": 1, "base_seed": 1
    })json"), ConfigError);
    // k out of range for n
    CHECK_THROWS_AS(parse_experiment_config(R"json({
        "setting": "fixed_deadline",
        "instance": {"kind": "uniform", "n": 4, "seed": 1},
        "scaling": {"kind": "power", "q": 0.5},
        "algorithms": [{"name": "ssh", "k": 5, "deadline": 4.0}],
        "replications": 1, "base_seed": 1
    })json"), ConfigError);
}

TEST_CASE("runs are deterministic, ordered, and tagged per replication") {
    const auto config = parse_experiment_config(kFixedConfidenceConfig);
    const auto rows1 = run_experiment(config);
    const auto rows2 = run_experiment(config);
    REQUIRE(rows1.size() == 12);  // 4 cells x 3 reps

    std::ostringstream csv1, csv2;
    write_csv(rows1, csv1);
    write_csv(rows2, csv2);
    CHECK(csv1.str() == csv2.str());
    CHECK(csv1.str().rfind(
              "experiment,algorithm,params,rep,seed,success,virtual_time,total_pulls,"
              "wall_seconds\n",
              0) == 0);

    // worker pool does not change the emitted order
    const auto rows4 = run_experiment(config, 4);
    std::ostringstream csv4;
    write_csv(rows4, csv4);
    CHECK(csv4.str() == csv1.str());

    std::uint64_t pair = 0;
    for (const auto& row : rows1) CHECK(row.seed == child_seed(config.base_seed, pair++));
}

TEST_CASE("fixed-deadline sweeps run all baselines and tolerate infeasibility") {
    auto config = parse_experiment_config(kFixedDeadlineConfig);
    const auto rows = run_experiment(config);
    REQUIRE(rows.size() == 8);
    // ucbe at T=64 with lambda(1)=1 affords 64 pulls for 16 arms: feasible
    for (const auto& row : rows)
        if (row.algorithm == "ucbe") CHECK(row.error.empty());

    // shrink the deadline until stages go infeasible; the sweep must not abort
    auto tight = parse_experiment_config(kFixedDeadlineConfig);
    tight.algorithms[1].deadlines = {0.5};
    const auto rows2 = run_experiment(tight);
    bool saw_infeasible = false;
    for (const auto& row : rows2)
        if (row.algorithm == "sh" && !row.error.empty()) {
            CHECK(row.error.rfind("infeasible_deadline", 0) == 0);
            CHECK_FALSE(row.success);
            saw_infeasible = true;
        }
    CHECK(saw_infeasible);
}

TEST_CASE("the pull cap turns runaway replications into error rows") {
    auto config = parse_experiment_config(kFixedDeadlineConfig);
    config.max_total_pulls = 100;  // far below lambda^-1(64) = 4096
    const auto rows = run_experiment(config);
    bool saw_cap = false;
    for (const auto& row : rows)
        if (!row.error.empty() && row.error.rfind("pull_cap", 0) == 0) {
            CHECK_FALSE(row.success);
            saw_cap = true;
        }
    CHECK(saw_cap);
}

TEST_CASE("uniform recipes give every replication a fresh paired instance") {
    auto config = parse_experiment_config(kFixedDeadlineConfig);
    config.replications = 2;
    const auto rows = run_experiment(config);
    // ssh rows at T=64, reps 0 and 1 face different instances -> generally
    // different virtual times; the paired sh row shares the rep-0 instance.
    (void)rows;
    const auto i0 = make_uniform_instance(16, child_seed(5, 0));
    const auto i1 = make_uniform_instance(16, child_seed(5, 1));
    CHECK(i0.means() != i1.means());
}

TEST_CASE("summaries aggregate success and time with standard errors") {
    std::vector<ResultRow> rows;
    for (int i = 0; i < 10; ++i) {
        ResultRow row;
        row.experiment = "e";
        row.algorithm = "a";
        row.params = "p";
        row.rep = i;
        row.success = i < 5;
        row.virtual_time = 2.0;
        rows.push_back(row);
    }
    const auto summary = summarize(rows);
    REQUIRE(summary.size() == 1);
    CHECK(summary[0].second.rows == 10);
    CHECK(summary[0].second.success_mean == doctest::Approx(0.5));
    CHECK(summary[0].second.success_se == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(summary[0].second.virtual_time_mean == doctest::Approx(2.0));
    CHECK(summary[0].second.virtual_time_se == doctest::Approx(0.0));
    CHECK_FALSE(summary[0].second.degenerate);

    const auto all_good = summarize({rows[0]});
    CHECK(all_good[0].second.success_mean == 1.0);
    CHECK(all_good[0].second.success_se == 0.0);
    CHECK(all_good[0].second.degenerate);

    CHECK_THROWS_AS(summarize({}), DomainError);
}

TEST_CASE("wall clock column is zero unless explicitly requested") {
    ResultRow row;
    row.experiment = "e";
    row.algorithm = "a";
    row.params = "p";
    row.wall_seconds = 1.25;
    std::ostringstream plain, timed;
    write_csv({row}, plain);
    write_csv({row}, timed, true);
    CHECK(plain.str().find(",0\n") != std::string::npos);
    CHECK(timed.str().find("1.250000") != std::string::npos);
}
