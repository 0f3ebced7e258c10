// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's arithmetic.
#ifndef BOHRLAB_TESTS_SUPPORT_ORACLES_H_
#define BOHRLAB_TESTS_SUPPORT_ORACLES_H_

#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;
using IntSeries = std::map<std::uint64_t, Complex>;  // n -> a_n

inline std::vector<std::uint64_t> sieve_primes(std::uint64_t limit) {
  std::vector<bool> composite(limit + 1, false);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

// Dense divisor convolution: c_n = sum_{d | n} a_d b_{n/d} for every
// n <= limit, scanning each n against the divisors available in a.
inline IntSeries divisor_convolution(const IntSeries& a, const IntSeries& b,
                                     std::uint64_t limit) {
  std::vector<Complex> bv(limit + 1);
  std::vector<bool> bset(limit + 1, false);
  for (const auto& [n, c] : b) {
    if (n <= limit) {
      bv[n] = c;
      bset[n] = true;
    }
  }
  IntSeries out;
  for (std::uint64_t n = 1; n <= limit; ++n) {
    Complex s = 0.0;
    bool touched = false;
    for (const auto& [d, c] : a) {
      if (d > n) break;
      if (n % d == 0 && bset[n / d]) {
        s += c * bv[n / d];
        touched = true;
      }
    }
    if (touched && s != Complex(0.0)) out[n] = s;
  }
  return out;
}

// Random sparse series with integer indices in [1, max_index] and
// coefficients with small integer parts so products stay exact.
inline IntSeries random_int_series(std::mt19937_64& rng, std::uint64_t max_index,
                                   std::size_t terms) {
  std::uniform_int_distribution<std::uint64_t> idx(1, max_index);
  std::uniform_int_distribution<int> coef(-4, 4);
  IntSeries out;
  while (out.size() < terms) {
    const Complex c(coef(rng), coef(rng));
    if (c != Complex(0.0)) out[idx(rng)] = c;
  }
  return out;
}

}  // namespace oracle

#endif  // BOHRLAB_TESTS_SUPPORT_ORACLES_H_
