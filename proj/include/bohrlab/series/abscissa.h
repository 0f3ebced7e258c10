#ifndef BOHRLAB_SERIES_ABSCISSA_H_
#define BOHRLAB_SERIES_ABSCISSA_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "bohrlab/series/dirichlet.h"

namespace bohrlab {

struct AbscissaRow {
  BigInt n;
  double log10_n;
  double a_n;  // A_N(D, 0)
};

struct AbscissaEstimate {
  // NaN unless a passing divergence witness was supplied.
  double sigma_a_lower;
  double sigma_a_bohr_cahen;
  double certificate_sigma;
  std::vector<AbscissaRow> table;
  // Always set: every series here is a finite truncation, so the slope is a
  // heuristic and sigma_a of the truncation itself is -infinity.
  bool truncation_caveat = true;
  // sigma_a_lower <= sigma_a_bohr_cahen + tolerance (true when no lower bound).
  bool consistent = true;
};

// A finite witness that A_N(D, sigma) grows past every checked level; only
// passed witnesses raise sigma_a_lower.
struct DivergenceWitness {
  double sigma;
  bool passed;
};

struct AbscissaOptions {
  std::size_t max_rows = 256;
  double tolerance = 0.05;
};

// Table of A_N(D, 0) at support points and the least-squares slope of
// log A_N against log N over the rows with N >= sqrt(N_max), clamped at 0.
AbscissaEstimate bohr_cahen_sigma_a(const SparseSeries& d,
                                    std::optional<DivergenceWitness> witness = {},
                                    const AbscissaOptions& options = {});

// Quantile-spaced support indices (always including the largest one).
std::vector<std::size_t> support_schedule(std::size_t support_size,
                                          std::size_t rows);

}  // namespace bohrlab

#endif  // BOHRLAB_SERIES_ABSCISSA_H_
