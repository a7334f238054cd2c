#include "orbitsum/dynamics.hpp"

#include "orbitsum/error.hpp"

#include <algorithm>
#include <bit>
#include <new>
#include <string>

namespace orbitsum {

namespace {

class Bitmap {
public:
    explicit Bitmap(std::size_t bits) : words_((bits + 63) / 64, 0) {}

    void set(std::size_t i) noexcept { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
    void reset(std::size_t i) noexcept { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
    bool test(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1; }

    void clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

    void fill_prefix(std::size_t bits) noexcept
    {
        clear();
        std::size_t full = bits / 64;
        std::fill_n(words_.begin(), full, ~std::uint64_t{0});
        if (bits % 64) {
            words_[full] = (std::uint64_t{1} << (bits % 64)) - 1;
        }
    }

    std::size_t count() const noexcept
    {
        std::size_t n = 0;
        for (auto w : words_) {
            n += static_cast<std::size_t>(std::popcount(w));
        }
        return n;
    }

    template <class Fn>
    void for_each_set(Fn&& fn) const
    {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            for (auto bits = words_[w]; bits; bits &= bits - 1) {
                fn(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
            }
        }
    }

    void swap(Bitmap& other) noexcept { words_.swap(other.words_); }

private:
    std::vector<std::uint64_t> words_;
};

[[noreturn]] void throw_resource(const MapSpec& spec)
{
    throw ResourceError("cannot allocate working buffers for p = " + std::to_string(spec.prime()));
}

template <class Fn>
auto with_buffers(const MapSpec& spec, Fn&& fn)
{
    try {
        return fn();
    } catch (const std::bad_alloc&) {
        throw_resource(spec);
    } catch (const std::length_error&) {
        throw_resource(spec);
    }
}

template <class Fn>
void stabilize(const MapSpec& spec, Fn&& on_size)
{
    const auto f = spec.step();
    const std::size_t p = spec.prime();
    Bitmap current(p);
    Bitmap image(p);
    current.fill_prefix(p);
    std::size_t size = p;
    on_size(size);
    for (;;) {
        image.clear();
        current.for_each_set([&](std::size_t x) { image.set(f(static_cast<Residue>(x))); });
        const std::size_t next = image.count();
        on_size(next);
        current.swap(image);
        if (next == size) {
            break;
        }
        size = next;
    }
}

// Deletes in-degree-zero nodes until none remain and returns the number of
// survivors. On return degree[x] == 0 exactly for the deleted nodes.
template <class Counter>
std::uint32_t peel_into(const MapSpec& spec, std::vector<Counter>& degree, std::vector<Residue>& worklist)
{
    const auto f = spec.step();
    const Prime p = spec.prime();

    degree.assign(p, 0);
    for (Residue x = 0; x < p; ++x) {
        ++degree[f(x)];
    }

    // FIFO of deleted nodes. Every node enters at most once, when its in-degree
    // reaches zero. Pushes are branchless: the slot is always written and the
    // tail only advances on a hit, which keeps the loop free of mispredictions.
    worklist.resize(std::size_t{p} + 1);
    std::size_t tail = 0;
    for (Residue x = 0; x < p; ++x) {
        worklist[tail] = x;
        tail += degree[x] == 0;
    }
    for (std::size_t head = 0; head < tail; ++head) {
        const Residue y = f(worklist[head]);
        worklist[tail] = y;
        tail += --degree[y] == 0;
    }
    return p - static_cast<std::uint32_t>(tail);
}

// Calls fn(alive_mask) where alive_mask.test(x) means x is periodic.
template <class Fn>
auto with_periodic_mask(const MapSpec& spec, Fn&& fn)
{
    return with_buffers(spec, [&] {
        Bitmap alive(spec.prime());
        std::vector<Residue> worklist;
        auto fill = [&](auto& degree) {
            peel_into(spec, degree, worklist);
            for (Residue x = 0; x < spec.prime(); ++x) {
                if (degree[x] != 0) {
                    alive.set(x);
                }
            }
        };
        if (spec.degree() < 255) {
            std::vector<std::uint8_t> degree;
            fill(degree);
        } else {
            std::vector<std::uint32_t> degree;
            fill(degree);
        }
        return fn(alive);
    });
}

} // namespace

MapSpec::MapSpec(unsigned degree, std::int64_t coefficient, Prime prime)
    : degree_(degree), raw_coefficient_(coefficient), coefficient_(0), prime_(prime)
{
    if (degree < 2) {
        throw ValidationError("map degree must be at least 2, got " + std::to_string(degree));
    }
    if (prime >= kModulusBound) {
        throw ValidationError("modulus " + std::to_string(prime) + " is not below 2^31");
    }
    if (!is_prime(prime)) {
        throw ValidationError(std::to_string(prime) + " is not prime");
    }
    auto r = coefficient % static_cast<std::int64_t>(prime);
    if (r < 0) {
        r += prime;
    }
    coefficient_ = static_cast<Residue>(r);
}

PeriodicResult count_periodic_image_stabilize(const MapSpec& spec)
{
    std::size_t last = 0;
    with_buffers(spec, [&] { stabilize(spec, [&](std::size_t n) { last = n; }); });
    return {spec, static_cast<std::uint32_t>(last), std::nullopt};
}

std::vector<std::uint32_t> image_stabilize_trace(const MapSpec& spec)
{
    std::vector<std::uint32_t> trace;
    with_buffers(spec, [&] {
        stabilize(spec, [&](std::size_t n) { trace.push_back(static_cast<std::uint32_t>(n)); });
    });
    return trace;
}

PeriodicResult count_periodic_peel(const MapSpec& spec)
{
    const auto count = with_buffers(spec, [&] {
        std::vector<Residue> worklist;
        if (spec.degree() < 255) {
            std::vector<std::uint8_t> degree;
            return peel_into(spec, degree, worklist);
        }
        std::vector<std::uint32_t> degree;
        return peel_into(spec, degree, worklist);
    });
    return {spec, count, std::nullopt};
}

std::vector<Residue> periodic_set(const MapSpec& spec)
{
    return with_periodic_mask(spec, [&](const Bitmap& alive) {
        std::vector<Residue> out;
        alive.for_each_set([&](std::size_t x) { out.push_back(static_cast<Residue>(x)); });
        return out;
    });
}

std::vector<std::uint32_t> cycle_structure(const MapSpec& spec)
{
    const auto f = spec.step();
    return with_periodic_mask(spec, [&](const Bitmap& periodic) {
        Bitmap pending = periodic;
        std::vector<std::uint32_t> lengths;
        for (Residue x = 0; x < spec.prime(); ++x) {
            if (!pending.test(x)) {
                continue;
            }
            std::uint32_t length = 0;
            Residue y = x;
            do {
                pending.reset(y);
                ++length;
                y = f(y);
            } while (y != x);
            lengths.push_back(length);
        }
        return lengths;
    });
}

PeriodicResult describe_periodic(const MapSpec& spec)
{
    auto lengths = cycle_structure(spec);
    std::uint32_t count = 0;
    for (auto n : lengths) {
        count += n;
    }
    return {spec, count, std::move(lengths)};
}

} // namespace orbitsum
