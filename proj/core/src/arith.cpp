#include "orbitsum/arith.hpp"

#include "orbitsum/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace orbitsum {

namespace {

// Odd-only segment of this many numbers (a bit under 256 KiB of bytes).
constexpr std::uint64_t kSegmentSpan = std::uint64_t{1} << 19;

std::vector<std::uint32_t> small_odd_primes(std::uint32_t bound)
{
    std::vector<char> composite(bound + 1, 0);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 3; i <= bound; i += 2) {
        if (composite[i]) {
            continue;
        }
        out.push_back(i);
        for (std::uint64_t j = std::uint64_t{i} * i; j <= bound; j += 2 * i) {
            composite[j] = 1;
        }
    }
    return out;
}

// Upper bound on p_n (Rosser): p_n < n (ln n + ln ln n) for n >= 6.
std::uint64_t nth_prime_bound(std::size_t n)
{
    if (n < 6) {
        return 13;
    }
    const double x = static_cast<double>(n);
    return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) + 1;
}

} // namespace

PrimeList sieve_primes(std::uint64_t limit)
{
    if (limit > std::numeric_limits<std::uint32_t>::max()) {
        throw ValidationError("sieve limit " + std::to_string(limit) + " exceeds 2^32 - 1");
    }
    std::vector<Prime> primes;
    if (limit < 2) {
        return {limit, std::move(primes)};
    }
    primes.push_back(2);

    const auto root = static_cast<std::uint32_t>(std::sqrt(static_cast<double>(limit))) + 1;
    const auto sievers = small_odd_primes(root);

    // next[i] is the next odd multiple of sievers[i] still to be crossed off.
    std::vector<std::uint64_t> next;
    next.reserve(sievers.size());
    for (auto q : sievers) {
        next.push_back(std::uint64_t{q} * q);
    }

    std::vector<char> segment(kSegmentSpan / 2);
    for (std::uint64_t low = 3; low <= limit; low += kSegmentSpan) {
        const std::uint64_t high = std::min(low + kSegmentSpan - 1, limit);
        std::fill(segment.begin(), segment.end(), 1);

        // index (n - low) / 2 represents the odd number n.
        for (std::size_t i = 0; i < sievers.size(); ++i) {
            const std::uint64_t q = sievers[i];
            if (q * q > high) {
                break;
            }
            std::uint64_t j = next[i];
            for (; j <= high; j += 2 * q) {
                segment[(j - low) / 2] = 0;
            }
            next[i] = j;
        }
        for (std::uint64_t n = low; n <= high; n += 2) {
            if (segment[(n - low) / 2]) {
                primes.push_back(static_cast<Prime>(n));
            }
        }
    }
    return {limit, std::move(primes)};
}

std::vector<Prime> first_primes(std::size_t count)
{
    if (count == 0) {
        return {};
    }
    auto list = sieve_primes(nth_prime_bound(count));
    std::vector<Prime> out(list.begin(), list.begin() + static_cast<std::ptrdiff_t>(count));
    return out;
}

Prime nth_prime(std::size_t n)
{
    if (n == 0) {
        throw ValidationError("nth_prime: n must be at least 1");
    }
    const auto list = sieve_primes(nth_prime_bound(n));
    return list[n - 1];
}

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t q : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (n % q == 0) {
            return n == q;
        }
    }
    if (n < 169) {
        return true;
    }
    // Miller-Rabin with bases {2, 7, 61} is exact below 4,759,123,141.
    auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
        return static_cast<std::uint64_t>((static_cast<detail::uint128>(a) * b) % n);
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (std::uint64_t a : {2u, 7u, 61u}) {
        if (a % n == 0) {
            continue;
        }
        std::uint64_t x = 1;
        std::uint64_t base = a % n;
        for (std::uint64_t e = d; e; e >>= 1) {
            if (e & 1) {
                x = mulmod(x, base);
            }
            base = mulmod(base, base);
        }
        if (x == 1 || x == n - 1) {
            continue;
        }
        bool witness = true;
        for (int r = 1; r < s; ++r) {
            x = mulmod(x, x);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) {
            return false;
        }
    }
    return true;
}

Modulus::Modulus(std::uint32_t p)
    : p_(p), inverse_(0)
{
    if (p < 2 || p >= kModulusBound) {
        throw ValidationError("modulus " + std::to_string(p) + " outside [2, 2^31)");
    }
    inverse_ = std::numeric_limits<std::uint64_t>::max() / p;
}

std::uint32_t Modulus::pow(std::uint32_t base, std::uint64_t exponent) const noexcept
{
    std::uint32_t result = 1 % p_;
    while (exponent) {
        if (exponent & 1) {
            result = mul(result, base);
        }
        base = mul(base, base);
        exponent >>= 1;
    }
    return result;
}

Residue map_step(Residue x, Residue c, unsigned d, Prime p)
{
    if (d < 2) {
        throw ValidationError("map degree must be at least 2");
    }
    if (x >= p || c >= p) {
        throw ValidationError("map_step: operands must be reduced modulo p");
    }
    return MapStep(d, c, p)(x);
}

} // namespace orbitsum
