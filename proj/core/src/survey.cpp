#include "orbitsum/survey.hpp"

#include "orbitsum/dynamics.hpp"
#include "orbitsum/error.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>

namespace orbitsum {

namespace {

constexpr std::size_t kFlushRecords = 4096;
constexpr auto kFlushInterval = std::chrono::seconds(2);

std::string pair_label(std::int64_t c, Prime p)
{
    return "(c=" + std::to_string(c) + ", p=" + std::to_string(p) + ")";
}

struct Failure {
    RecordKey key;
    std::string message;
};

} // namespace

SurveyError::SurveyError(std::int64_t c_raw, Prime prime, const std::string& what)
    : Error("survey pair " + pair_label(c_raw, prime) + ": " + what), c_raw_(c_raw), prime_(prime)
{
}

void SurveyConfig::validate() const
{
    if (coefficients.empty()) {
        throw ValidationError("survey needs at least one coefficient");
    }
    std::set<std::int64_t> seen;
    for (auto c : coefficients) {
        if (!seen.insert(c).second) {
            throw ValidationError("duplicate coefficient " + std::to_string(c));
        }
    }
    if (degree < 2) {
        throw ValidationError("map degree must be at least 2");
    }
    if (prime_count.has_value() == prime_limit.has_value()) {
        throw ValidationError("exactly one of prime_count and prime_limit must be set");
    }
    if (prime_count && *prime_count == 0) {
        throw ValidationError("prime_count must be positive");
    }
    if (prime_limit && *prime_limit >= kModulusBound) {
        throw ValidationError("prime_limit must be below 2^31");
    }
    if (worker_count == 0) {
        throw ValidationError("worker_count must be positive");
    }
}

std::vector<Prime> SurveyConfig::primes() const
{
    validate();
    if (prime_count) {
        auto out = first_primes(*prime_count);
        if (!out.empty() && out.back() >= kModulusBound) {
            throw ValidationError("prime_count reaches primes beyond 2^31");
        }
        return out;
    }
    const auto list = sieve_primes(*prime_limit);
    return {list.begin(), list.end()};
}

SurveyResult run_survey(const SurveyConfig& config, CacheFile& cache, const ProgressFn& progress)
{
    const auto primes = config.primes();
    auto coefficients = config.coefficients;
    std::sort(coefficients.begin(), coefficients.end());

    SurveyProgress stats;
    stats.total = coefficients.size() * primes.size();

    std::vector<RecordKey> missing;
    for (auto c : coefficients) {
        for (auto p : primes) {
            const RecordKey key{c, config.degree, p};
            if (cache.find(key)) {
                ++stats.cached;
            } else {
                missing.push_back(key);
            }
        }
    }
    // Largest moduli first so the tail of the run is made of cheap pairs.
    std::stable_sort(missing.begin(), missing.end(),
                     [](const RecordKey& a, const RecordKey& b) { return a.prime > b.prime; });

    if (progress) {
        progress(stats);
    }

    std::atomic<std::size_t> next{0};
    std::atomic<bool> stop{false};
    std::mutex mutex;
    std::condition_variable ready;
    std::vector<CountRecord> inbox;
    std::optional<Failure> failure;
    const auto worker_count =
        static_cast<unsigned>(std::min<std::size_t>(config.worker_count, std::max<std::size_t>(missing.size(), 1)));
    unsigned active = worker_count;

    auto work = [&] {
        for (;;) {
            const auto i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= missing.size() || stop.load(std::memory_order_relaxed)) {
                break;
            }
            const auto& key = missing[i];
            try {
                const MapSpec spec(key.degree, key.c_raw, key.prime);
                const auto result = count_periodic_peel(spec);
                std::lock_guard lock(mutex);
                inbox.push_back({key.c_raw, key.degree, key.prime, result.count});
            } catch (const std::exception& e) {
                std::lock_guard lock(mutex);
                if (!failure) {
                    failure = Failure{key, e.what()};
                }
                stop = true;
                break;
            }
            ready.notify_one();
        }
        {
            std::lock_guard lock(mutex);
            --active;
        }
        ready.notify_one();
    };

    std::optional<Failure> store_failure;
    {
        std::vector<std::jthread> pool;
        pool.reserve(worker_count);
        for (unsigned i = 0; i < worker_count && !missing.empty(); ++i) {
            pool.emplace_back(work);
        }
        if (pool.empty()) {
            active = 0;
        }

        std::vector<CountRecord> pending;
        auto last_flush = std::chrono::steady_clock::now();
        auto flush = [&] {
            if (pending.empty() || store_failure) {
                return;
            }
            try {
                cache.store(pending);
            } catch (const StoreError& e) {
                store_failure = Failure{key_of(pending.front()), e.what()};
                stop = true;
                return;
            }
            stats.computed += pending.size();
            pending.clear();
            last_flush = std::chrono::steady_clock::now();
            if (progress) {
                progress(stats);
            }
        };

        for (;;) {
            std::vector<CountRecord> batch;
            bool done = false;
            {
                std::unique_lock lock(mutex);
                ready.wait_for(lock, kFlushInterval, [&] { return !inbox.empty() || active == 0; });
                batch.swap(inbox);
                done = active == 0;
            }
            pending.insert(pending.end(), batch.begin(), batch.end());
            if (done || pending.size() >= kFlushRecords ||
                std::chrono::steady_clock::now() - last_flush >= kFlushInterval) {
                flush();
            }
            if (done) {
                break;
            }
        }
    }

    if (failure) {
        throw SurveyError(failure->key.c_raw, failure->key.prime, failure->message);
    }
    if (store_failure) {
        throw SurveyError(store_failure->key.c_raw, store_failure->key.prime, store_failure->message);
    }

    SurveyResult result;
    result.stats = stats;
    result.records.reserve(stats.total);
    for (auto c : coefficients) {
        for (auto p : primes) {
            const auto* t = cache.find({c, config.degree, p});
            result.records.push_back({c, config.degree, p, *t});
        }
    }
    return result;
}

std::vector<CountRecord> gather_records(const CacheFile& cache, std::int64_t c_raw, unsigned degree,
                                        std::span<const Prime> primes)
{
    std::vector<CountRecord> out;
    out.reserve(primes.size());
    for (auto p : primes) {
        const auto* t = cache.find({c_raw, degree, p});
        if (!t) {
            throw ValidationError("cache " + cache.path().string() + " has no record for " +
                                  pair_label(c_raw, p) + " with d=" + std::to_string(degree));
        }
        out.push_back({c_raw, degree, p, *t});
    }
    return out;
}

Series cumulative_sum(std::span<const CountRecord> records)
{
    Series series;
    if (records.empty()) {
        return series;
    }
    const auto& first = records.front();
    series.label = "ST[c=" + std::to_string(first.c_raw) + ",d=" + std::to_string(first.degree) + "]";

    const auto expected = sieve_primes(records.back().prime);
    series.points.reserve(records.size());
    std::uint64_t total = 0;
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        if (r.c_raw != first.c_raw || r.degree != first.degree) {
            throw ValidationError("cumulative_sum: records mix several maps");
        }
        if (k >= expected.size() || r.prime != expected[k]) {
            const Prime want = k < expected.size() ? expected[k] : r.prime;
            throw ValidationError("cumulative_sum: missing prime " + std::to_string(want) +
                                  " (record " + std::to_string(k + 1) + " has p = " + std::to_string(r.prime) +
                                  ")");
        }
        total += r.count;
        series.points.push_back({k + 1, r.prime, static_cast<double>(total)});
    }
    return series;
}

std::uint64_t sum_over_c(Prime p, unsigned degree)
{
    std::uint64_t total = 0;
    for (Prime c = 0; c < p; ++c) {
        total += count_periodic_peel(MapSpec(degree, c, p)).count;
    }
    return total;
}

} // namespace orbitsum
