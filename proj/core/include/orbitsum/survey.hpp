#pragma once

#include "orbitsum/arith.hpp"
#include "orbitsum/error.hpp"
#include "orbitsum/series.hpp"
#include "orbitsum/store.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace orbitsum {

// A grid of maps x -> x^d + c over a prefix of the primes.
struct SurveyConfig {
    std::vector<std::int64_t> coefficients;
    unsigned degree = 2;
    std::optional<std::size_t> prime_count; // first N primes
    std::optional<Prime> prime_limit;       // all primes <= limit
    unsigned worker_count = 1;

    // Throws ValidationError: exactly one prime bound, non-empty duplicate-free
    // coefficients, degree >= 2, worker_count >= 1, limit below 2^31.
    void validate() const;

    // The primes of the grid, in increasing order.
    std::vector<Prime> primes() const;
};

struct SurveyProgress {
    std::size_t total = 0;    // pairs in the grid
    std::size_t cached = 0;   // reused from the cache
    std::size_t computed = 0; // computed so far in this run
};

struct SurveyResult {
    std::vector<CountRecord> records; // sorted by (c_raw, p)
    SurveyProgress stats;
};

using ProgressFn = std::function<void(const SurveyProgress&)>;

// Computes every (c, p) pair of the grid that the cache lacks, using a pool of
// config.worker_count threads. Completed records are appended to the cache in
// batches by the calling thread. If a pair fails, the records already finished
// are flushed and SurveyError naming that pair is thrown.
SurveyResult run_survey(const SurveyConfig& config, CacheFile& cache, const ProgressFn& progress = {});

class SurveyError : public Error {
public:
    SurveyError(std::int64_t c_raw, Prime prime, const std::string& what);

    std::int64_t c_raw() const noexcept { return c_raw_; }
    Prime prime() const noexcept { return prime_; }

private:
    std::int64_t c_raw_;
    Prime prime_;
};

// Records for one coefficient over the given primes, read from the cache.
// Throws ValidationError naming the first missing (c, p).
std::vector<CountRecord> gather_records(const CacheFile& cache, std::int64_t c_raw, unsigned degree,
                                        std::span<const Prime> primes);

// ST_c(p_k) for k = 1..N. Records must be for one (c, d) and cover the first N primes
// without gaps (ValidationError naming the missing prime otherwise).
Series cumulative_sum(std::span<const CountRecord> records);

// Sum of T_c(p) over all residues c in [0, p).
std::uint64_t sum_over_c(Prime p, unsigned degree);

} // namespace orbitsum
