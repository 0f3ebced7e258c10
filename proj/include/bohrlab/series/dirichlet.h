#ifndef BOHRLAB_SERIES_DIRICHLET_H_
#define BOHRLAB_SERIES_DIRICHLET_H_

#include <cstddef>
#include <vector>

#include "bohrlab/series/sparse_series.h"

namespace bohrlab {

// Terms of a Dirichlet-side series ordered by their integer index n, with
// ln n held at double precision after a 50-digit summation. Comparisons
// against a bound N fall back to exact big-integer arithmetic when the
// logarithms are too close to decide.
class IndexedSeries {
 public:
  struct Entry {
    const Term* term;
    double log_n;
  };

  explicit IndexedSeries(const SparseSeries& d);

  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  // Number of entries with n <= bound.
  std::size_t count_at_most(const BigInt& bound) const;
  BigInt index_of(std::size_t i) const;
  BigInt largest_index() const;

 private:
  bool at_most(const Entry& e, const BigInt& bound, double log_bound) const;

  std::vector<Entry> entries_;
};

// A_N(D, sigma) = sum_{n <= N} |a_n| n^{-sigma} over the stored terms.
double partial_abs_sum(const SparseSeries& d, double sigma, const BigInt& bound);

// A_N at many bounds for one sigma; prefix sums over the index order.
class AbsSumProfile {
 public:
  AbsSumProfile(const SparseSeries& d, double sigma);

  double at(const BigInt& bound) const;
  double total() const { return prefix_.empty() ? 0.0 : prefix_.back(); }
  const IndexedSeries& index() const { return index_; }
  double sigma() const { return sigma_; }
  // Prefix value after the first `count` indices.
  double prefix(std::size_t count) const {
    return count == 0 ? 0.0 : prefix_[count - 1];
  }

 private:
  IndexedSeries index_;
  double sigma_;
  std::vector<double> prefix_;
};

// sum a_n n^{-s}; requires Re s >= 0.
Complex evaluate_dirichlet(const SparseSeries& d, Complex s);

double log10_of(const BigInt& n);
double ln_of(const BigInt& n);

}  // namespace bohrlab

#endif  // BOHRLAB_SERIES_DIRICHLET_H_
