#include "orbitsum/dynamics.hpp"
#include "orbitsum/error.hpp"

#include "support/oracles.hpp"

#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

using namespace orbitsum;

TEST_CASE("MapSpec reduces the coefficient")
{
    const MapSpec a(2, -2, 5);
    CHECK(a.coefficient() == 3);
    CHECK(a.raw_coefficient() == -2);
    CHECK(MapSpec(2, 12, 5).coefficient() == 2);
    CHECK(MapSpec(2, -100, 7).coefficient() == 5);
    CHECK(MapSpec(2, INT64_MIN, 3).coefficient() == oracle::reduce_signed(INT64_MIN, 3));

    std::mt19937_64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        const auto c = static_cast<std::int64_t>(rng()) >> (rng() % 60);
        const MapSpec s(2, c, 104'729);
        REQUIRE(s.coefficient() < 104'729u);
        REQUIRE((static_cast<__int128>(s.coefficient()) - c) % 104'729 == 0);
    }

    CHECK_THROWS_AS(MapSpec(1, 0, 5), ValidationError);
    CHECK_THROWS_AS(MapSpec(2, 0, 4), ValidationError);
    CHECK_THROWS_AS(MapSpec(2, 0, 1), ValidationError);
    CHECK_THROWS_AS(MapSpec(2, 0, 0), ValidationError);
}

TEST_CASE("image stabilization examples")
{
    CHECK(count_periodic_image_stabilize(MapSpec(2, 0, 5)).count == 2);
    CHECK(count_periodic_image_stabilize(MapSpec(2, 1, 5)).count == 3);
    CHECK(count_periodic_image_stabilize(MapSpec(2, 3, 5)).count ==
          count_periodic_image_stabilize(MapSpec(2, -2, 5)).count);
    for (std::int64_t c : {0, 1, -7, 1001}) {
        CHECK(count_periodic_image_stabilize(MapSpec(2, c, 2)).count == 2);
    }
}

TEST_CASE("peeling examples")
{
    CHECK(count_periodic_peel(MapSpec(2, 0, 5)).count == 2);
    CHECK(count_periodic_peel(MapSpec(2, 1, 3)).count == 1);
    CHECK(count_periodic_peel(MapSpec(3, 0, 5)).count == 5);
    CHECK(count_periodic_peel(MapSpec(2, 1, 2)).count == 2);
}

TEST_CASE("periodic_set and cycle_structure examples")
{
    CHECK(periodic_set(MapSpec(2, 1, 5)) == std::vector<Residue>{0, 1, 2});
    CHECK(periodic_set(MapSpec(2, 0, 5)) == std::vector<Residue>{0, 1});
    CHECK(periodic_set(MapSpec(2, 3, 5)) == std::vector<Residue>{2, 4});

    CHECK(cycle_structure(MapSpec(2, 1, 5)) == std::vector<std::uint32_t>{3});
    CHECK(cycle_structure(MapSpec(2, 0, 5)) == std::vector<std::uint32_t>{1, 1});
    CHECK(cycle_structure(MapSpec(2, 1, 2)) == std::vector<std::uint32_t>{2});

    const auto described = describe_periodic(MapSpec(2, 1, 5));
    CHECK(described.count == 3);
    REQUIRE(described.cycle_lengths);
    CHECK(*described.cycle_lengths == std::vector<std::uint32_t>{3});
}

TEST_CASE("all counting routes agree with the naive walk for small primes")
{
    for (Prime p : oracle::trial_division_primes(150)) {
        for (unsigned d : {2u, 3u, 4u}) {
            for (Prime c = 0; c < p; ++c) {
                const MapSpec spec(d, c, p);
                const auto naive = oracle::naive_periodic_set(d, c, p);
                const auto set = periodic_set(spec);
                REQUIRE(std::set<std::uint64_t>(set.begin(), set.end()) == naive);
                REQUIRE(count_periodic_peel(spec).count == naive.size());
                REQUIRE(count_periodic_image_stabilize(spec).count == naive.size());
                REQUIRE(oracle::naive_periodic_count(d, c, p) == naive.size());
                REQUIRE(cycle_structure(spec) == oracle::naive_cycle_lengths(d, c, p));
            }
        }
    }
}

TEST_CASE("wide in-degree path for degree >= 255")
{
    for (Prime p : {2u, 3u, 257u, 263u, 521u}) {
        for (unsigned d : {255u, 256u, 257u, 300u}) {
            for (Prime c : {0u, 1u, 5u % p}) {
                const MapSpec spec(d, c, p);
                REQUIRE(count_periodic_peel(spec).count == oracle::naive_periodic_count(d, c, p));
                REQUIRE(count_periodic_image_stabilize(spec).count == oracle::naive_periodic_count(d, c, p));
            }
        }
    }
}

TEST_CASE("periodic set is closed and f is a bijection on it")
{
    std::mt19937_64 rng(3);
    const auto primes = oracle::trial_division_primes(5000);
    for (int trial = 0; trial < 200; ++trial) {
        const Prime p = primes[rng() % primes.size()];
        const unsigned d = 2 + static_cast<unsigned>(rng() % 3);
        const MapSpec spec(d, static_cast<std::int64_t>(rng() % 1000) - 500, p);
        const auto set = periodic_set(spec);
        const auto f = spec.step();
        std::set<Residue> image;
        for (auto x : set) {
            image.insert(f(x));
        }
        REQUIRE(image.size() == set.size());
        REQUIRE(std::equal(image.begin(), image.end(), set.begin()));

        const auto lengths = cycle_structure(spec);
        REQUIRE(std::accumulate(lengths.begin(), lengths.end(), std::uint64_t{0}) == set.size());
        REQUIRE(set.size() >= 1);
        REQUIRE(set.size() <= p);
    }
}

TEST_CASE("count equals p exactly for bijections")
{
    // x^3 permutes F_p iff gcd(3, p - 1) = 1, i.e. p = 2 or p = 2 mod 3.
    for (Prime p : oracle::trial_division_primes(400)) {
        const bool bijective = (p - 1) % 3 != 0;
        for (Prime c = 0; c < p; c += 7) {
            const auto count = count_periodic_peel(MapSpec(3, c, p)).count;
            REQUIRE((count == p) == bijective);
        }
    }
    // x^2 is a bijection only on F_2.
    for (Prime p : oracle::trial_division_primes(400)) {
        REQUIRE((count_periodic_peel(MapSpec(2, 1, p)).count == p) == (p == 2));
    }
}

TEST_CASE("image stabilization trace shrinks strictly until it stalls")
{
    std::mt19937_64 rng(5);
    const auto primes = oracle::trial_division_primes(3000);
    for (int trial = 0; trial < 100; ++trial) {
        const Prime p = primes[rng() % primes.size()];
        const MapSpec spec(2, static_cast<std::int64_t>(rng() % p), p);
        const auto trace = image_stabilize_trace(spec);
        REQUIRE(trace.size() >= 2);
        CHECK(trace.front() == p);
        CHECK(trace[trace.size() - 1] == trace[trace.size() - 2]);
        for (std::size_t i = 1; i + 1 < trace.size(); ++i) {
            REQUIRE(trace[i] < trace[i - 1]);
        }
        CHECK(trace.back() == count_periodic_peel(spec).count);
    }
}

TEST_CASE("counts depend only on c mod p")
{
    std::mt19937_64 rng(9);
    const auto primes = oracle::trial_division_primes(2000);
    for (int trial = 0; trial < 100; ++trial) {
        const Prime p = primes[rng() % primes.size()];
        const auto c = static_cast<std::int64_t>(rng() % 4000) - 2000;
        const auto k = static_cast<std::int64_t>(rng() % 7) - 3;
        REQUIRE(count_periodic_peel(MapSpec(2, c, p)).count ==
                count_periodic_peel(MapSpec(2, c + k * static_cast<std::int64_t>(p), p)).count);
    }
}
