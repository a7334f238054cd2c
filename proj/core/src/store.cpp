#include "orbitsum/store.hpp"

#include "orbitsum/error.hpp"

#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include <fcntl.h>
#include <sys/stat.h>
#include <unistd.h>

namespace orbitsum {

namespace {

template <class Int>
bool parse_field(std::string_view field, Int& out)
{
    if (field.empty()) {
        return false;
    }
    const auto* first = field.data();
    const auto* last = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

[[noreturn]] void malformed(std::string_view source, std::size_t line, std::string_view why)
{
    std::ostringstream msg;
    msg << source << ":" << line << ": " << why;
    throw StoreError(msg.str());
}

std::string errno_text(int err) { return std::strerror(err); }

} // namespace

std::string format_record(const CountRecord& r)
{
    std::string out = std::to_string(r.c_raw);
    out += ',';
    out += std::to_string(r.degree);
    out += ',';
    out += std::to_string(r.prime);
    out += ',';
    out += std::to_string(r.count);
    return out;
}

RecordMap parse_cache(std::string_view text, std::string_view source)
{
    RecordMap map;
    std::size_t line_no = 0;
    bool saw_header = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;

        if (!saw_header) {
            if (line != kCacheHeader) {
                malformed(source, line_no, "expected header '" + std::string(kCacheHeader) + "'");
            }
            saw_header = true;
            continue;
        }
        if (line.empty()) {
            continue;
        }

        std::string_view fields[4];
        std::size_t n = 0;
        for (;;) {
            const auto comma = line.find(',');
            if (n == 4) {
                malformed(source, line_no, "too many fields");
            }
            fields[n++] = line.substr(0, comma);
            if (comma == std::string_view::npos) {
                break;
            }
            line.remove_prefix(comma + 1);
        }
        if (n != 4) {
            malformed(source, line_no, "expected 4 fields c_raw,d,p,t");
        }
        CountRecord r;
        if (!parse_field(fields[0], r.c_raw) || !parse_field(fields[1], r.degree) ||
            !parse_field(fields[2], r.prime) || !parse_field(fields[3], r.count)) {
            malformed(source, line_no, "non-integer field");
        }
        if (r.degree < 2 || r.prime < 2 || r.count < 1 || r.count > r.prime) {
            malformed(source, line_no, "field out of range");
        }
        map[key_of(r)] = r.count;
    }
    return map;
}

RecordMap load_cache(const std::filesystem::path& path)
{
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        return {};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw StoreError("cannot open cache " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw StoreError("error reading cache " + path.string());
    }
    const auto text = buf.str();
    if (text.empty()) {
        return {};
    }
    return parse_cache(text, path.string());
}

std::size_t append_records(const std::filesystem::path& path, std::span<const CountRecord> records)
{
    if (records.empty()) {
        return 0;
    }
    const int fd = ::open(path.c_str(), O_RDWR | O_APPEND | O_CREAT | O_CLOEXEC, 0644);
    if (fd < 0) {
        throw StoreError("cannot open cache " + path.string() + ": " + errno_text(errno));
    }

    std::string payload;
    struct stat st {};
    if (::fstat(fd, &st) == 0) {
        char last = '\n';
        if (st.st_size == 0) {
            payload += kCacheHeader;
            payload += '\n';
        } else if (::pread(fd, &last, 1, st.st_size - 1) == 1 && last != '\n') {
            // A torn final row stays isolated on its own line.
            payload += '\n';
        }
    }
    for (const auto& r : records) {
        payload += format_record(r);
        payload += '\n';
    }

    std::string_view rest = payload;
    while (!rest.empty()) {
        const auto n = ::write(fd, rest.data(), rest.size());
        if (n < 0) {
            if (errno == EINTR) {
                continue;
            }
            const int err = errno;
            ::close(fd);
            throw StoreError("write to cache " + path.string() + " failed: " + errno_text(err));
        }
        rest.remove_prefix(static_cast<std::size_t>(n));
    }
    if (::fsync(fd) != 0) {
        const int err = errno;
        ::close(fd);
        throw StoreError("fsync of cache " + path.string() + " failed: " + errno_text(err));
    }
    if (::close(fd) != 0) {
        throw StoreError("close of cache " + path.string() + " failed: " + errno_text(errno));
    }
    return records.size();
}

CacheFile::CacheFile(std::filesystem::path path)
    : path_(std::move(path)), records_(load_cache(path_))
{
}

const std::uint32_t* CacheFile::find(const RecordKey& key) const
{
    const auto it = records_.find(key);
    return it == records_.end() ? nullptr : &it->second;
}

std::size_t CacheFile::store(std::span<const CountRecord> records)
{
    std::vector<CountRecord> fresh;
    fresh.reserve(records.size());
    for (const auto& r : records) {
        if (!records_.contains(key_of(r))) {
            fresh.push_back(r);
        }
    }
    const auto written = append_records(path_, fresh);
    for (const auto& r : fresh) {
        records_[key_of(r)] = r.count;
    }
    return written;
}

} // namespace orbitsum
