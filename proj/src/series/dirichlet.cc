#include "bohrlab/series/dirichlet.h"

#include <algorithm>
#include <cmath>

#include "bohrlab/error.h"
#include "bohrlab/series/index.h"

namespace bohrlab {
namespace {

constexpr double kLogSlack = 1e-9;

void require_dirichlet(const SparseSeries& d) {
  if (d.side() != Side::kDirichlet) {
    throw SideMismatch("operation needs a Dirichlet-side series");
  }
}

}  // namespace

double ln_of(const BigInt& n) {
  if (n <= 0) throw InvalidInput("logarithm of a non-positive index");
  const std::size_t bits = boost::multiprecision::msb(n) + 1;
  if (bits <= 1000) {
    return static_cast<double>(boost::multiprecision::log(Float50(n)));
  }
  // Drop low bits so the conversion stays in range.
  const std::size_t drop = bits - 200;
  const BigInt top = n >> drop;
  return static_cast<double>(boost::multiprecision::log(Float50(top))) +
         static_cast<double>(drop) * std::log(2.0);
}

double log10_of(const BigInt& n) { return ln_of(n) / std::log(10.0); }

IndexedSeries::IndexedSeries(const SparseSeries& d) {
  require_dirichlet(d);
  entries_.reserve(d.size());
  for (const auto& t : d.terms()) {
    entries_.push_back({&t, static_cast<double>(log_index(t.alpha))});
  }
  std::sort(entries_.begin(), entries_.end(), [](const Entry& a, const Entry& b) {
    if (std::abs(a.log_n - b.log_n) > kLogSlack) return a.log_n < b.log_n;
    return multiindex_to_index(a.term->alpha) < multiindex_to_index(b.term->alpha);
  });
}

bool IndexedSeries::at_most(const Entry& e, const BigInt& bound,
                            double log_bound) const {
  if (e.log_n < log_bound - kLogSlack) return true;
  if (e.log_n > log_bound + kLogSlack) return false;
  return multiindex_to_index(e.term->alpha) <= bound;
}

std::size_t IndexedSeries::count_at_most(const BigInt& bound) const {
  if (bound < 1) return 0;
  const double log_bound = ln_of(bound);
  auto it = std::partition_point(
      entries_.begin(), entries_.end(),
      [&](const Entry& e) { return at_most(e, bound, log_bound); });
  return static_cast<std::size_t>(it - entries_.begin());
}

BigInt IndexedSeries::index_of(std::size_t i) const {
  return multiindex_to_index(entries_.at(i).term->alpha);
}

BigInt IndexedSeries::largest_index() const {
  return entries_.empty() ? BigInt(0) : index_of(entries_.size() - 1);
}

AbsSumProfile::AbsSumProfile(const SparseSeries& d, double sigma)
    : index_(d), sigma_(sigma) {
  prefix_.reserve(index_.size());
  long double run = 0.0L;
  for (const auto& e : index_.entries()) {
    run += std::abs(e.term->coeff) * std::exp(-sigma * e.log_n);
    prefix_.push_back(static_cast<double>(run));
  }
}

double AbsSumProfile::at(const BigInt& bound) const {
  return prefix(index_.count_at_most(bound));
}

double partial_abs_sum(const SparseSeries& d, double sigma, const BigInt& bound) {
  return AbsSumProfile(d, sigma).at(bound);
}

Complex evaluate_dirichlet(const SparseSeries& d, Complex s) {
  require_dirichlet(d);
  if (s.real() < 0.0) {
    throw InvalidInput("Dirichlet-side evaluation needs Re s >= 0");
  }
  Complex total = 0.0;
  for (const auto& t : d.terms()) {
    const double log_n = static_cast<double>(log_index(t.alpha));
    total += t.coeff * std::exp(-s * log_n);
  }
  return total;
}

}  // namespace bohrlab
