#pragma once

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <vector>

namespace apzeta {

// Error term in the Dirichlet divisor problem at x:
//   Delta(x) = sum'_{n<=x} d(n) - x(log x + 2*gamma - 1) - 1/4,
// where sum' halves the last term when x is an integer.
struct DeltaValue {
    double x;
    double delta;
};

// Sieved divisor counts d(n) for 1 <= n <= limit with exact prefix sums
// D(n). Immutable after construction; safe to share across threads.
class DivisorTable {
  public:
    static constexpr std::uint64_t kDefaultEntryCap = 1'000'000'000;

    std::uint64_t limit() const { return d_.empty() ? 0 : d_.size() - 1; }
    std::uint32_t d(std::uint64_t n) const;        // 1 <= n <= limit
    std::uint64_t prefix(std::uint64_t n) const;   // D(n), exact

    void save(const std::filesystem::path& path) const;
    static DivisorTable load(const std::filesystem::path& path);

  private:
    friend DivisorTable sieve(std::uint64_t, std::uint64_t);
    std::vector<std::uint32_t> d_;       // index 0 unused
    std::vector<std::uint64_t> prefix_;  // prefix_[n] = D(n)
    void rebuild_prefix();
};

DivisorTable sieve(std::uint64_t limit, std::uint64_t entry_cap = DivisorTable::kDefaultEntryCap);

// D(floor(x)) for 1 <= x <= limit.
std::uint64_t divisor_sum(const DivisorTable& table, double x);

DeltaValue delta(const DivisorTable& table, double x);

// Exceeding the sieve memory-policy cap.
class ResourceError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace apzeta
