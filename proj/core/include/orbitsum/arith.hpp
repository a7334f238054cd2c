#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace orbitsum {

using Prime = std::uint32_t;
using Residue = std::uint32_t;

namespace detail {
__extension__ typedef unsigned __int128 uint128;
} // namespace detail

// Moduli must stay below this bound so that a product of two residues fits in 62 bits.
inline constexpr std::uint64_t kModulusBound = std::uint64_t{1} << 31;

// All primes up to a limit, in increasing order.
class PrimeList {
public:
    PrimeList() = default;
    PrimeList(std::uint64_t limit, std::vector<Prime> primes)
        : limit_(limit), primes_(std::move(primes)) {}

    std::uint64_t limit() const noexcept { return limit_; }
    std::span<const Prime> primes() const noexcept { return primes_; }
    std::size_t size() const noexcept { return primes_.size(); }
    bool empty() const noexcept { return primes_.empty(); }

    // 0-based access; nth(1) is the first prime.
    Prime operator[](std::size_t i) const { return primes_[i]; }

    auto begin() const noexcept { return primes_.begin(); }
    auto end() const noexcept { return primes_.end(); }

private:
    std::uint64_t limit_ = 0;
    std::vector<Prime> primes_;
};

// Segmented sieve of Eratosthenes. Working memory is O(sqrt(limit)) plus one segment.
// Limits beyond 2^32 - 1 are rejected with ValidationError.
PrimeList sieve_primes(std::uint64_t limit);

// The first `count` primes (p_1 = 2, ..., p_count).
std::vector<Prime> first_primes(std::size_t count);

// p_n, 1-indexed. n == 0 raises ValidationError.
Prime nth_prime(std::size_t n);

// Deterministic primality test for 32-bit inputs.
bool is_prime(std::uint64_t n) noexcept;

// Barrett reduction by a fixed modulus p < 2^31, valid for any x < 2^62.
class Modulus {
public:
    explicit Modulus(std::uint32_t p);

    std::uint32_t value() const noexcept { return p_; }

    std::uint32_t reduce(std::uint64_t x) const noexcept
    {
        const auto q = static_cast<std::uint64_t>((static_cast<detail::uint128>(x) * inverse_) >> 64);
        auto r = x - q * p_;
        if (r >= p_) {
            r -= p_;
        }
        return static_cast<std::uint32_t>(r);
    }

    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return reduce(static_cast<std::uint64_t>(a) * b);
    }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept
    {
        const std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }

    // base^exponent mod p by repeated squaring; base must already be reduced.
    std::uint32_t pow(std::uint32_t base, std::uint64_t exponent) const noexcept;

private:
    std::uint32_t p_;
    std::uint64_t inverse_; // floor((2^64 - 1) / p)
};

// One application of x -> x^d + c over F_p, precomputed for a fixed (d, c, p).
// This is the inner loop of every counting routine.
class MapStep {
public:
    MapStep(unsigned degree, Residue coefficient, Prime p)
        : modulus_(p), coefficient_(coefficient), degree_(degree) {}

    Residue operator()(Residue x) const noexcept
    {
        if (degree_ == 2) {
            return modulus_.reduce(static_cast<std::uint64_t>(x) * x + coefficient_);
        }
        return modulus_.add(modulus_.pow(x, degree_), coefficient_);
    }

    Prime prime() const noexcept { return modulus_.value(); }
    unsigned degree() const noexcept { return degree_; }
    Residue coefficient() const noexcept { return coefficient_; }

private:
    Modulus modulus_;
    Residue coefficient_;
    unsigned degree_;
};

// (x^d + c) mod p for reduced x and c. Requires p < 2^31 and d >= 2.
Residue map_step(Residue x, Residue c, unsigned d, Prime p);

} // namespace orbitsum
