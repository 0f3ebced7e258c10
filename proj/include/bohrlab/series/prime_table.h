#ifndef BOHRLAB_SERIES_PRIME_TABLE_H_
#define BOHRLAB_SERIES_PRIME_TABLE_H_

#include <cstddef>
#include <cstdint>
#include <mutex>
#include <shared_mutex>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace bohrlab {

using BigInt = boost::multiprecision::cpp_int;
// 50 decimal digits; used for ln(n) of indices with hundreds of bits.
using Float50 = boost::multiprecision::cpp_bin_float_50;

// Grow-only table of the first primes. Readers hold a shared lock, growth
// takes the exclusive lock, so concurrent readers never observe a shrink.
class PrimeTable {
 public:
  static constexpr std::size_t kDefaultMaxPrimes = 5'000'000;

  explicit PrimeTable(std::size_t max_primes = kDefaultMaxPrimes);

  // Process-wide table used by the free functions below.
  static PrimeTable& global();

  // k-th prime, 1-based (nth(1) == 2). Grows the table on demand.
  std::uint64_t nth(std::size_t k);
  // Position of `prime` in the sequence of primes; throws InvalidInput if
  // `prime` is not prime.
  std::size_t index_of(std::uint64_t prime);
  // ln(p_k) at 50 significant digits.
  Float50 log_nth(std::size_t k);

  void ensure_count(std::size_t count);
  void ensure_covering(std::uint64_t value);

  std::size_t size() const;
  std::size_t max_primes() const { return max_primes_; }
  std::uint64_t largest() const;

  // Smallest C with p_n <= C n^(1+eps) for n <= count (grows the table).
  double pnt_constant(double eps, std::size_t count);

 private:
  void grow_locked(std::uint64_t sieve_limit);

  std::size_t max_primes_;
  mutable std::shared_mutex mu_;
  std::vector<std::uint64_t> primes_;
  std::mutex log_mu_;
  std::vector<Float50> logs_;
  std::vector<bool> log_known_;
};

inline std::uint64_t nth_prime(std::size_t k) {
  return PrimeTable::global().nth(k);
}

}  // namespace bohrlab

#endif  // BOHRLAB_SERIES_PRIME_TABLE_H_
