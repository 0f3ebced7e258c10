#include "bohrlab/series/index.h"

#include <limits>
#include <vector>

#include "bohrlab/error.h"

namespace bohrlab {

namespace {

// rest fits in 64 bits from here on; native division is much faster.
void factor_u64(std::uint64_t rest, std::size_t k, PrimeTable& table,
                std::vector<IndexEntry>& entries) {
  for (; rest > 1; ++k) {
    const std::uint64_t p = table.nth(k);
    if (static_cast<unsigned __int128>(p) * p > rest) {
      entries.push_back({static_cast<std::uint32_t>(table.index_of(rest)), 1});
      return;
    }
    std::uint32_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e) entries.push_back({static_cast<std::uint32_t>(k), e});
  }
}

}  // namespace

MultiIndex index_to_multiindex(const BigInt& n, PrimeTable& table) {
  if (n < 1) throw InvalidInput("Dirichlet indices start at 1");
  std::vector<IndexEntry> entries;
  BigInt rest = n;
  const BigInt u64_max = std::numeric_limits<std::uint64_t>::max();
  std::size_t k = 1;
  for (; rest > u64_max; ++k) {
    const std::uint64_t p = table.nth(k);
    if (BigInt(p) * p > rest) {
      throw ResourceError("prime cofactor exceeds the prime table range");
    }
    std::uint32_t e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e) entries.push_back({static_cast<std::uint32_t>(k), e});
  }
  factor_u64(static_cast<std::uint64_t>(rest), k, table, entries);
  return MultiIndex::from_entries(entries);
}

BigInt multiindex_to_index(const MultiIndex& alpha, PrimeTable& table) {
  BigInt n = 1;
  for (const auto& e : alpha.entries()) {
    n *= boost::multiprecision::pow(BigInt(table.nth(e.position)), e.exponent);
  }
  return n;
}

Float50 log_index(const MultiIndex& alpha, PrimeTable& table) {
  Float50 total = 0;
  for (const auto& e : alpha.entries()) {
    total += table.log_nth(e.position) * e.exponent;
  }
  return total;
}

}  // namespace bohrlab
