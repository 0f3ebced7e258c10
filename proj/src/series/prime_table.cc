#include "bohrlab/series/prime_table.h"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "bohrlab/error.h"

namespace bohrlab {
namespace {

// Upper bound for p_n (Rosser: p_n < n(ln n + ln ln n) for n >= 6).
std::uint64_t nth_prime_upper_bound(std::size_t n) {
  if (n < 6) return 15;
  const double x = static_cast<double>(n);
  return static_cast<std::uint64_t>(x * (std::log(x) + std::log(std::log(x)))) +
         16;
}

std::vector<std::uint64_t> sieve(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return primes;
}

}  // namespace

PrimeTable::PrimeTable(std::size_t max_primes) : max_primes_(max_primes) {
  std::unique_lock lock(mu_);
  grow_locked(1 << 12);
}

PrimeTable& PrimeTable::global() {
  static PrimeTable table;
  return table;
}

void PrimeTable::grow_locked(std::uint64_t sieve_limit) {
  auto primes = sieve(sieve_limit);
  if (primes.size() > max_primes_) primes.resize(max_primes_);
  if (primes.size() <= primes_.size()) return;
  primes_ = std::move(primes);
}

void PrimeTable::ensure_count(std::size_t count) {
  {
    std::shared_lock lock(mu_);
    if (primes_.size() >= count) return;
  }
  if (count > max_primes_) {
    throw ResourceError("prime table budget exceeded: requested " +
                        std::to_string(count) + " primes, budget " +
                        std::to_string(max_primes_));
  }
  std::unique_lock lock(mu_);
  if (primes_.size() >= count) return;
  const std::size_t target = std::min(max_primes_, std::max(count, 2 * primes_.size()));
  grow_locked(nth_prime_upper_bound(target));
}

void PrimeTable::ensure_covering(std::uint64_t value) {
  while (true) {
    std::size_t have;
    {
      std::shared_lock lock(mu_);
      if (!primes_.empty() && primes_.back() >= value) return;
      have = primes_.size();
    }
    if (have >= max_primes_) {
      throw ResourceError("prime table budget exceeded while covering " +
                          std::to_string(value));
    }
    ensure_count(std::min(max_primes_, 2 * have + 1));
  }
}

std::uint64_t PrimeTable::nth(std::size_t k) {
  if (k == 0) throw InvalidInput("prime positions are 1-based");
  ensure_count(k);
  std::shared_lock lock(mu_);
  return primes_[k - 1];
}

Float50 PrimeTable::log_nth(std::size_t k) {
  if (k == 0) throw InvalidInput("prime positions are 1-based");
  const std::uint64_t p = nth(k);
  // Logs are filled lazily: most table primes only ever serve factorization.
  std::lock_guard lock(log_mu_);
  if (logs_.size() < k) {
    logs_.resize(k);
    log_known_.resize(k, false);
  }
  if (!log_known_[k - 1]) {
    logs_[k - 1] = boost::multiprecision::log(Float50(p));
    log_known_[k - 1] = true;
  }
  return logs_[k - 1];
}

std::size_t PrimeTable::index_of(std::uint64_t prime) {
  ensure_covering(prime);
  std::shared_lock lock(mu_);
  auto it = std::lower_bound(primes_.begin(), primes_.end(), prime);
  if (it == primes_.end() || *it != prime) {
    throw InvalidInput(std::to_string(prime) + " is not prime");
  }
  return static_cast<std::size_t>(it - primes_.begin()) + 1;
}

std::size_t PrimeTable::size() const {
  std::shared_lock lock(mu_);
  return primes_.size();
}

std::uint64_t PrimeTable::largest() const {
  std::shared_lock lock(mu_);
  return primes_.back();
}

double PrimeTable::pnt_constant(double eps, std::size_t count) {
  ensure_count(count);
  std::shared_lock lock(mu_);
  double c = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const double n = static_cast<double>(i + 1);
    c = std::max(c, static_cast<double>(primes_[i]) / std::pow(n, 1.0 + eps));
  }
  return c;
}

}  // namespace bohrlab
