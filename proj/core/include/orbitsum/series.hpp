#pragma once

#include "orbitsum/arith.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace orbitsum {

// One sample of a prime-indexed statistic: N, p_N and the value at p_N.
struct SeriesPoint {
    std::size_t index = 0;
    Prime prime = 0;
    double value = 0.0;

    friend bool operator==(const SeriesPoint&, const SeriesPoint&) = default;
};

// Indices are strictly increasing and prime == p_index.
struct Series {
    std::string label;
    std::vector<SeriesPoint> points;

    std::size_t size() const noexcept { return points.size(); }
    bool empty() const noexcept { return points.empty(); }
};

} // namespace orbitsum
