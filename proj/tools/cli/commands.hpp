#pragma once

#include <cstdint>
#include <ostream>
#include <string_view>
#include <vector>

namespace orbitsum::cli {

// Runs one orbitsum command line and returns the process exit status. Data and
// summaries go to `out`, diagnostics and progress to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

// Comma-separated integers and inclusive ranges, e.g. "-5..-3,-1,1..5".
std::vector<std::int64_t> parse_coefficients(std::string_view text);

} // namespace orbitsum::cli
