#pragma once

#include "orbitsum/arith.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace orbitsum {

// The dynamical system x -> x^d + c over F_p. The coefficient is kept both as given
// and reduced into [0, p); everything downstream depends only on the reduced value.
class MapSpec {
public:
    // Throws ValidationError unless degree >= 2 and prime is a prime below 2^31.
    MapSpec(unsigned degree, std::int64_t coefficient, Prime prime);

    unsigned degree() const noexcept { return degree_; }
    std::int64_t raw_coefficient() const noexcept { return raw_coefficient_; }
    Residue coefficient() const noexcept { return coefficient_; }
    Prime prime() const noexcept { return prime_; }

    MapStep step() const { return {degree_, coefficient_, prime_}; }

    friend bool operator==(const MapSpec&, const MapSpec&) = default;

private:
    unsigned degree_;
    std::int64_t raw_coefficient_;
    Residue coefficient_;
    Prime prime_;
};

struct PeriodicResult {
    MapSpec spec;
    std::uint32_t count = 0;                                // T_c(p)
    std::optional<std::vector<std::uint32_t>> cycle_lengths; // filled by describe_periodic
};

// Repeatedly replace S by f(S), starting from all of F_p, until |S| stops changing.
// Uses two p-bit bitmaps.
PeriodicResult count_periodic_image_stabilize(const MapSpec& spec);

// The sequence |S_0| = p, |S_1|, ... produced by image stabilization, ending with the
// repeated final size.
std::vector<std::uint32_t> image_stabilize_trace(const MapSpec& spec);

// Delete nodes of in-degree zero from the functional graph until none remain; the
// survivors are the cycle nodes. O(p) time.
PeriodicResult count_periodic_peel(const MapSpec& spec);

// Sorted list of the periodic points.
std::vector<Residue> periodic_set(const MapSpec& spec);

// Lengths of the disjoint cycles, in increasing order of each cycle's smallest element.
std::vector<std::uint32_t> cycle_structure(const MapSpec& spec);

// count_periodic_peel plus cycle_lengths.
PeriodicResult describe_periodic(const MapSpec& spec);

} // namespace orbitsum
