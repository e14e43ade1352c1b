#include "apzeta/divisor.hpp"

#include <cmath>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "apzeta/real.hpp"

namespace apzeta {

DivisorTable sieve(std::uint64_t limit, std::uint64_t entry_cap) {
    if (limit < 1) throw std::invalid_argument("sieve: limit must be >= 1");
    if (limit > entry_cap)
        throw ResourceError("sieve: limit " + std::to_string(limit) + " exceeds entry cap " +
                            std::to_string(entry_cap));
    DivisorTable t;
    t.d_.assign(limit + 1, 0);
    for (std::uint64_t u = 1; u <= limit; ++u)
        for (std::uint64_t m = u; m <= limit; m += u) t.d_[m]++;
    t.rebuild_prefix();
    return t;
}

void DivisorTable::rebuild_prefix() {
    prefix_.assign(d_.size(), 0);
    std::uint64_t acc = 0;
    for (std::size_t n = 1; n < d_.size(); ++n) {
        acc += d_[n];
        prefix_[n] = acc;
    }
}

std::uint32_t DivisorTable::d(std::uint64_t n) const {
    if (n < 1 || n > limit()) throw std::out_of_range("DivisorTable::d: n outside table");
    return d_[n];
}

std::uint64_t DivisorTable::prefix(std::uint64_t n) const {
    if (n < 1 || n > limit()) throw std::out_of_range("DivisorTable::prefix: n outside table");
    return prefix_[n];
}

std::uint64_t divisor_sum(const DivisorTable& table, double x) {
    if (!(x >= 1.0) || x > static_cast<double>(table.limit()))
        throw std::out_of_range("divisor_sum: x outside table range");
    return table.prefix(static_cast<std::uint64_t>(std::floor(x)));
}

DeltaValue delta(const DivisorTable& table, double x) {
    if (!(x >= 1.0) || x > static_cast<double>(table.limit()))
        throw std::out_of_range("delta: x outside table range");
    auto n = static_cast<std::uint64_t>(std::floor(x));
    bool integral = (static_cast<double>(n) == x);
    // sum' over n<=x, halving d(x) at integer x; exact in integer arithmetic
    // (doubled to keep it integral), then the smooth part at context precision.
    std::uint64_t twice_sum = 2 * table.prefix(n) - (integral ? table.d(n) : 0);
    int bits = default_precision_bits();
    const auto& cs = constants(bits);
    Real xr(x, bits);
    Real smooth = xr * (Real::log(xr) + cs.gamma_euler * 2L - 1L);
    Real value = Real(twice_sum, bits) / 2L - smooth - Real(0.25, bits);
    return {x, value.to_double()};
}

namespace {
constexpr char kMagic[4] = {'D', 'I', 'V', 'T'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put_le(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(v >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}
}  // namespace

void DivisorTable::save(const std::filesystem::path& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    out.write(kMagic, 4);
    put_le<std::uint32_t>(out, kVersion);
    put_le<std::uint64_t>(out, limit());
    for (std::size_t n = 1; n < d_.size(); ++n) put_le<std::uint32_t>(out, d_[n]);
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

DivisorTable DivisorTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open: " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("not a divisor table file: " + path.string());
    auto version = get_le<std::uint32_t>(in);
    if (version != kVersion)
        throw std::runtime_error("unsupported table version " + std::to_string(version));
    auto limit = get_le<std::uint64_t>(in);
    DivisorTable t;
    t.d_.assign(limit + 1, 0);
    for (std::uint64_t n = 1; n <= limit; ++n) t.d_[n] = get_le<std::uint32_t>(in);
    if (!in) throw std::runtime_error("truncated table file: " + path.string());
    t.rebuild_prefix();
    return t;
}

}  // namespace apzeta
