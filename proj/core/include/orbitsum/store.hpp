#pragma once

#include "orbitsum/arith.hpp"

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string_view>
#include <vector>

namespace orbitsum {

// One computed data point: T = number of periodic points of x^d + c_raw over F_p.
// c_raw is kept exactly as requested, not reduced modulo p.
struct CountRecord {
    std::int64_t c_raw = 0;
    unsigned degree = 2;
    Prime prime = 0;
    std::uint32_t count = 0;

    friend auto operator<=>(const CountRecord&, const CountRecord&) = default;
};

struct RecordKey {
    std::int64_t c_raw = 0;
    unsigned degree = 2;
    Prime prime = 0;

    friend auto operator<=>(const RecordKey&, const RecordKey&) = default;
};

inline RecordKey key_of(const CountRecord& r) noexcept { return {r.c_raw, r.degree, r.prime}; }

using RecordMap = std::map<RecordKey, std::uint32_t>;

inline constexpr std::string_view kCacheHeader = "#orbitsum-cache v1";

// Parse cache text. Later rows win on duplicate keys. Throws StoreError naming the
// 1-based line number on a malformed row or a wrong header.
RecordMap parse_cache(std::string_view text, std::string_view source = "<memory>");

// Missing file -> empty map.
RecordMap load_cache(const std::filesystem::path& path);

// Appends rows (writing the header first if the file is new or empty), then
// flushes and fsyncs. Returns the number of rows written.
std::size_t append_records(const std::filesystem::path& path, std::span<const CountRecord> records);

std::string format_record(const CountRecord& record);

// A loaded cache file plus its in-memory index. Single writer.
class CacheFile {
public:
    explicit CacheFile(std::filesystem::path path);

    const std::filesystem::path& path() const noexcept { return path_; }
    const RecordMap& records() const noexcept { return records_; }
    std::size_t size() const noexcept { return records_.size(); }

    const std::uint32_t* find(const RecordKey& key) const;

    // Appends only records whose key is not yet cached; returns how many were written.
    std::size_t store(std::span<const CountRecord> records);

private:
    std::filesystem::path path_;
    RecordMap records_;
};

} // namespace orbitsum
