#include <cstdlib>
#include <cstring>
#include <fstream>

#include "envsieve/arith.hpp"
#include "envsieve/errors.hpp"

namespace envsieve::arith {

namespace {

constexpr char kMagic[6] = {'P', 'R', 'I', 'M', 'V', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(b), 8);
}

bool get_u64(std::istream& in, std::uint64_t& v) {
    unsigned char b[8];
    if (!in.read(reinterpret_cast<char*>(b), 8)) return false;
    v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return true;
}

}  // namespace

std::filesystem::path cache_directory() {
    const char* env = std::getenv("SELBERG_CACHE_DIR");
    return env && *env ? std::filesystem::path(env) : std::filesystem::path("./.cache");
}

void write_prime_cache(const std::filesystem::path& path, std::span<const std::uint64_t> primes) {
    std::error_code ec;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write prime cache " + tmp.string());
        out.write(kMagic, sizeof kMagic);
        put_u64(out, primes.size());
        for (std::uint64_t p : primes) put_u64(out, p);
        if (!out) throw IoError("short write to prime cache " + tmp.string());
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("cannot install prime cache " + path.string());
}

std::vector<std::uint64_t> read_prime_cache(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open prime cache " + path.string());
    char magic[6];
    if (!in.read(magic, 6) || std::memcmp(magic, kMagic, 6) != 0) throw IoError("bad prime cache magic in " + path.string());
    std::uint64_t count = 0;
    if (!get_u64(in, count)) throw IoError("truncated prime cache " + path.string());
    auto size = std::filesystem::file_size(path);
    if (size != 14 + 8 * count) throw IoError("prime cache length does not match its count: " + path.string());
    std::vector<std::uint64_t> primes(count);
    for (auto& p : primes)
        if (!get_u64(in, p)) throw IoError("truncated prime cache " + path.string());
    for (std::size_t i = 1; i < primes.size(); ++i)
        if (primes[i] <= primes[i - 1]) throw IoError("prime cache is not sorted: " + path.string());
    return primes;
}

PrimeTable cached_sieve_primes(std::uint64_t limit) {
    auto path = cache_directory() / ("primes-" + std::to_string(limit) + ".bin");
    std::error_code ec;
    if (std::filesystem::exists(path, ec)) {
        try {
            return PrimeTable(limit, read_prime_cache(path));
        } catch (const IoError&) {
            // A damaged cache is rebuilt below.
        }
    }
    PrimeTable table = sieve_primes(limit);
    try {
        write_prime_cache(path, table.primes());
    } catch (const IoError&) {
        // Read-only cache directories are not an error; the table is still valid.
    }
    return table;
}

}  // namespace envsieve::arith
