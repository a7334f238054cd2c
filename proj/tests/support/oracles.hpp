#pragma once

// Reference implementations used only by tests. They share no code with the
// library: plain % arithmetic, trial division, per-orbit walking.

#include <algorithm>
#include <cstdint>
#include <set>
#include <vector>

namespace orbitsum::oracle {

inline bool trial_division_prime(std::uint64_t n)
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            return false;
        }
    }
    return true;
}

inline std::vector<std::uint32_t> trial_division_primes(std::uint64_t limit)
{
    std::vector<std::uint32_t> out;
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (trial_division_prime(n)) {
            out.push_back(static_cast<std::uint32_t>(n));
        }
    }
    return out;
}

inline std::uint64_t naive_step(std::uint64_t x, std::uint64_t c, unsigned d, std::uint64_t p)
{
    std::uint64_t y = 1;
    for (unsigned i = 0; i < d; ++i) {
        y = (y * x) % p;
    }
    return (y + c) % p;
}

inline std::uint64_t reduce_signed(std::int64_t c, std::uint64_t p)
{
    const auto m = static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(((c % m) + m) % m);
}

// Walk from every start until a node repeats; the repeated node and its orbit are
// cycle members.
inline std::set<std::uint64_t> naive_periodic_set(unsigned d, std::int64_t c_raw, std::uint64_t p)
{
    const auto c = reduce_signed(c_raw, p);
    std::set<std::uint64_t> periodic;
    std::vector<char> seen(p);
    for (std::uint64_t start = 0; start < p; ++start) {
        std::fill(seen.begin(), seen.end(), 0);
        std::uint64_t y = start;
        while (!seen[y]) {
            seen[y] = 1;
            y = naive_step(y, c, d, p);
        }
        const auto entry = y;
        do {
            periodic.insert(y);
            y = naive_step(y, c, d, p);
        } while (y != entry);
    }
    return periodic;
}

// Faster reference with the same idea: walk each start, stop on a node already
// classified, mark the newly found cycle. O(p) per map for the oracle sweep.
inline std::uint32_t naive_periodic_count(unsigned d, std::int64_t c_raw, std::uint64_t p)
{
    const auto c = reduce_signed(c_raw, p);
    // 0 = unvisited, 1 = on current walk, 2 = finished
    std::vector<char> state(p, 0);
    std::uint32_t count = 0;
    std::vector<std::uint64_t> walk;
    for (std::uint64_t start = 0; start < p; ++start) {
        walk.clear();
        std::uint64_t y = start;
        while (state[y] == 0) {
            state[y] = 1;
            walk.push_back(y);
            y = naive_step(y, c, d, p);
        }
        if (state[y] == 1) {
            // closed a new cycle at y
            const auto entry = y;
            do {
                ++count;
                y = naive_step(y, c, d, p);
            } while (y != entry);
        }
        for (auto w : walk) {
            state[w] = 2;
        }
    }
    return count;
}

inline std::vector<std::uint32_t> naive_cycle_lengths(unsigned d, std::int64_t c_raw, std::uint64_t p)
{
    const auto periodic = naive_periodic_set(d, c_raw, p);
    const auto c = reduce_signed(c_raw, p);
    std::set<std::uint64_t> done;
    std::vector<std::uint32_t> out;
    for (auto x : periodic) { // ascending
        if (done.contains(x)) {
            continue;
        }
        std::uint32_t n = 0;
        auto y = x;
        do {
            done.insert(y);
            ++n;
            y = naive_step(y, c, d, p);
        } while (y != x);
        out.push_back(n);
    }
    return out;
}

} // namespace orbitsum::oracle
