#ifndef BOHRLAB_SERIES_INDEX_H_
#define BOHRLAB_SERIES_INDEX_H_

#include <cstdint>

#include "bohrlab/series/multi_index.h"
#include "bohrlab/series/prime_table.h"

namespace bohrlab {

// n = p^alpha  <->  alpha. Factorization is trial division by table primes;
// a cofactor left after sqrt is prime and is located by growing the table.
MultiIndex index_to_multiindex(const BigInt& n,
                               PrimeTable& table = PrimeTable::global());
BigInt multiindex_to_index(const MultiIndex& alpha,
                           PrimeTable& table = PrimeTable::global());

// Omega(p^alpha) = |alpha|.
inline std::uint32_t omega(const MultiIndex& alpha) { return alpha.degree(); }

// ln(p^alpha) summed at 50 digits.
Float50 log_index(const MultiIndex& alpha,
                  PrimeTable& table = PrimeTable::global());

}  // namespace bohrlab

#endif  // BOHRLAB_SERIES_INDEX_H_
