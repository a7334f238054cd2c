#include "cli/tsv.hpp"

#include "orbitsum/error.hpp"

#include <array>
#include <charconv>

namespace orbitsum::cli {

std::string format_number(double value)
{
    std::array<char, 64> buf{};
    const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
    if (ec != std::errc{}) {
        throw Error("cannot format number");
    }
    return {buf.data(), ptr};
}

std::string format_number(std::uint64_t value)
{
    return std::to_string(value);
}

void TsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != columns_.size()) {
        throw ValidationError("TSV row has " + std::to_string(cells.size()) + " cells, expected " +
                              std::to_string(columns_.size()));
    }
    rows_.push_back(std::move(cells));
}

void TsvTable::write(std::ostream& out) const
{
    auto line = [&out](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) {
                out << '\t';
            }
            out << cells[i];
        }
        out << '\n';
    };
    line(columns_);
    for (const auto& row : rows_) {
        line(row);
    }
}

TsvTable series_table(const Series& s, std::string value_column)
{
    TsvTable table({"N", "p_N", std::move(value_column)});
    for (const auto& pt : s.points) {
        table.add_row({format_number(std::uint64_t{pt.index}), format_number(std::uint64_t{pt.prime}),
                       format_number(pt.value)});
    }
    return table;
}

TsvData parse_tsv(std::string_view text)
{
    TsvData data;
    bool header = true;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        std::vector<std::string> cells;
        for (;;) {
            const auto tab = line.find('\t');
            cells.emplace_back(line.substr(0, tab));
            if (tab == std::string_view::npos) {
                break;
            }
            line.remove_prefix(tab + 1);
        }
        if (header) {
            data.columns = std::move(cells);
            header = false;
            continue;
        }
        if (cells.size() != data.columns.size()) {
            throw ValidationError("ragged TSV row");
        }
        data.rows.push_back(std::move(cells));
    }
    return data;
}

} // namespace orbitsum::cli
