#ifndef BOHRLAB_SERIES_THETA_H_
#define BOHRLAB_SERIES_THETA_H_

#include <cstdint>
#include <set>
#include <string>
#include <variant>

#include "bohrlab/series/sparse_series.h"

namespace bohrlab {

// Theta = {u + k v : k >= 1}. u = 0 with v = 1 gives all of N.
struct Progression {
  std::uint64_t u = 0;
  std::uint64_t v = 1;

  bool contains(std::uint64_t x) const { return x > u && (x - u) % v == 0; }
  // k-th element, k >= 1.
  std::uint64_t element(std::uint64_t k) const { return u + k * v; }
  // Number of elements <= x.
  std::uint64_t count_at_most(std::uint64_t x) const {
    return x <= u ? 0 : (x - u) / v;
  }
  std::string to_string() const;
  friend bool operator==(const Progression&, const Progression&) = default;
};

// A set of prime positions: either a progression or an explicit finite set.
class ThetaSet {
 public:
  ThetaSet(Progression p) : repr_(p) {}  // NOLINT(google-explicit-constructor)
  explicit ThetaSet(std::set<std::uint64_t> explicit_positions)
      : repr_(std::move(explicit_positions)) {}

  bool contains(std::uint64_t position) const;

 private:
  std::variant<Progression, std::set<std::uint64_t>> repr_;
};

// True iff every stored alpha has support inside theta.
bool is_theta_supported(const SparseSeries& d, const ThetaSet& theta);

// True iff no stored alpha touches a position of theta.
bool avoids_theta(const SparseSeries& d, const ThetaSet& theta);

}  // namespace bohrlab

#endif  // BOHRLAB_SERIES_THETA_H_
