#pragma once

#include "orbitsum/series.hpp"

#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace orbitsum::cli {

// Shortest decimal that reads back to the same double; dot separator regardless of locale.
std::string format_number(double value);
std::string format_number(std::uint64_t value);

// Tab-separated table with a header row and LF line endings.
class TsvTable {
public:
    explicit TsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

    void add_row(std::vector<std::string> cells);
    void write(std::ostream& out) const;

    const std::vector<std::string>& columns() const noexcept { return columns_; }
    std::size_t rows() const noexcept { return rows_.size(); }

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

// N, p_N and the series value under `value_column`.
TsvTable series_table(const Series& s, std::string value_column);

// Parsed TSV: header plus rows of cells. Throws ValidationError on ragged rows.
struct TsvData {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};
TsvData parse_tsv(std::string_view text);

} // namespace orbitsum::cli
