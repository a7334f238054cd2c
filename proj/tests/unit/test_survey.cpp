#include "orbitsum/dynamics.hpp"
#include "orbitsum/error.hpp"
#include "orbitsum/survey.hpp"

#include "support/oracles.hpp"
#include "support/temp_dir.hpp"

#include <doctest.h>

using namespace orbitsum;
using orbitsum::testing::TempDir;

namespace {

SurveyConfig grid(std::vector<std::int64_t> cs, std::size_t count, unsigned workers = 1, unsigned d = 2)
{
    SurveyConfig cfg;
    cfg.coefficients = std::move(cs);
    cfg.degree = d;
    cfg.prime_count = count;
    cfg.worker_count = workers;
    return cfg;
}

} // namespace

TEST_CASE("survey examples")
{
    TempDir dir;
    CacheFile cache(dir / "c.csv");
    const auto result = run_survey(grid({1}, 3), cache);
    CHECK(result.records == std::vector<CountRecord>{{1, 2, 2, 2}, {1, 2, 3, 1}, {1, 2, 5, 3}});
    CHECK(result.stats.computed == 3);
    CHECK(result.stats.cached == 0);

    CacheFile other(dir / "d.csv");
    CHECK(run_survey(grid({0}, 1), other).records == std::vector<CountRecord>{{0, 2, 2, 2}});
}

TEST_CASE("rerunning a survey computes nothing")
{
    TempDir dir;
    {
        CacheFile cache(dir / "c.csv");
        run_survey(grid({-3, 1, 4}, 50), cache);
    }
    CacheFile cache(dir / "c.csv");
    int calls = 0;
    const auto again = run_survey(grid({-3, 1, 4}, 50), cache, [&](const SurveyProgress&) { ++calls; });
    CHECK(again.stats.computed == 0);
    CHECK(again.stats.cached == 150);
    CHECK(again.records.size() == 150);
    CHECK(calls >= 1);
}

TEST_CASE("survey output is independent of worker count and matches the oracle")
{
    TempDir dir;
    std::vector<std::vector<CountRecord>> outputs;
    for (unsigned workers : {1u, 2u, 5u}) {
        CacheFile cache(dir / ("w" + std::to_string(workers) + ".csv"));
        outputs.push_back(run_survey(grid({5, -2, 0, 3}, 120, workers), cache).records);
    }
    CHECK(outputs[0] == outputs[1]);
    CHECK(outputs[0] == outputs[2]);

    // sorted by (c_raw, p); c_raw verbatim
    CHECK(outputs[0].front().c_raw == -2);
    CHECK(std::is_sorted(outputs[0].begin(), outputs[0].end()));
    for (const auto& r : outputs[0]) {
        REQUIRE(r.count >= 1);
        REQUIRE(r.count <= r.prime);
        REQUIRE(r.count == oracle::naive_periodic_count(r.degree, r.c_raw, r.prime));
    }
}

TEST_CASE("partially cached grids only compute the gaps")
{
    TempDir dir;
    CacheFile cache(dir / "c.csv");
    run_survey(grid({1}, 30), cache);
    const auto result = run_survey(grid({1, 2}, 40), cache);
    CHECK(result.stats.cached == 30);
    CHECK(result.stats.computed == 50);
}

TEST_CASE("prime_limit grids")
{
    TempDir dir;
    CacheFile cache(dir / "c.csv");
    SurveyConfig cfg;
    cfg.coefficients = {1};
    cfg.prime_limit = 5;
    CHECK(run_survey(cfg, cache).records == std::vector<CountRecord>{{1, 2, 2, 2}, {1, 2, 3, 1}, {1, 2, 5, 3}});
}

TEST_CASE("invalid survey configs")
{
    auto bad = [](SurveyConfig cfg) { CHECK_THROWS_AS(cfg.validate(), ValidationError); };
    bad(grid({}, 3));
    bad(grid({1, 1}, 3));
    bad(grid({1}, 0));
    bad(grid({1}, 3, 0));
    bad(grid({1}, 3, 1, 1));
    auto both = grid({1}, 3);
    both.prime_limit = 10;
    bad(both);
    auto neither = grid({1}, 3);
    neither.prime_count.reset();
    bad(neither);
}

TEST_CASE("storage failure names the pair and keeps finished records")
{
    TempDir dir;
    CacheFile cache(dir / "gone" / "c.csv");
    try {
        run_survey(grid({7}, 4), cache);
        FAIL("expected SurveyError");
    } catch (const SurveyError& e) {
        CHECK(e.c_raw() == 7);
        CHECK(std::string(e.what()).find("c=7") != std::string::npos);
    }
}

TEST_CASE("cumulative_sum")
{
    const std::vector<CountRecord> records{{1, 2, 2, 2}, {1, 2, 3, 1}, {1, 2, 5, 3}};
    const auto st = cumulative_sum(records);
    REQUIRE(st.size() == 3);
    CHECK(st.points[0] == SeriesPoint{1, 2, 2.0});
    CHECK(st.points[1] == SeriesPoint{2, 3, 3.0});
    CHECK(st.points[2] == SeriesPoint{3, 5, 6.0});

    CHECK(cumulative_sum(std::vector<CountRecord>{}).empty());

    const std::vector<CountRecord> gap{{1, 2, 2, 2}, {1, 2, 5, 3}};
    try {
        cumulative_sum(gap);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("missing prime 3") != std::string::npos);
    }
    const std::vector<CountRecord> late_start{{1, 2, 3, 1}};
    CHECK_THROWS_WITH_AS(cumulative_sum(late_start), doctest::Contains("missing prime 2"), ValidationError);
    const std::vector<CountRecord> mixed{{1, 2, 2, 2}, {2, 2, 3, 2}};
    CHECK_THROWS_AS(cumulative_sum(mixed), ValidationError);
}

TEST_CASE("cumulative_sum is strictly increasing on survey data")
{
    TempDir dir;
    CacheFile cache(dir / "c.csv");
    const auto records = run_survey(grid({3}, 500), cache).records;
    const auto st = cumulative_sum(records);
    for (std::size_t i = 1; i < st.size(); ++i) {
        REQUIRE(st.points[i].value > st.points[i - 1].value);
        REQUIRE(st.points[i].index == i + 1);
    }
}

TEST_CASE("gather_records reports the first missing pair")
{
    TempDir dir;
    CacheFile cache(dir / "c.csv");
    run_survey(grid({1}, 3), cache);
    const std::vector<Prime> primes{2, 3, 5, 7};
    CHECK(gather_records(cache, 1, 2, std::span(primes).first(3)).size() == 3);
    CHECK_THROWS_WITH_AS(gather_records(cache, 1, 2, primes), doctest::Contains("(c=1, p=7)"), ValidationError);
}

TEST_CASE("sum_over_c")
{
    CHECK(sum_over_c(3, 2) == 5);
    CHECK(sum_over_c(2, 2) == 4);
    CHECK(sum_over_c(5, 2) == 12);
    CHECK(sum_over_c(13, 2) == 53);
    for (Prime p : oracle::trial_division_primes(60)) {
        std::uint64_t expected = 0;
        for (Prime c = 0; c < p; ++c) {
            expected += oracle::naive_periodic_count(3, c, p);
        }
        REQUIRE(sum_over_c(p, 3) == expected);
    }
}
