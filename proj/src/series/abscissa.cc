#include "bohrlab/series/abscissa.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "bohrlab/error.h"

namespace bohrlab {

std::vector<std::size_t> support_schedule(std::size_t support_size,
                                          std::size_t rows) {
  std::vector<std::size_t> out;
  if (support_size == 0 || rows == 0) return out;
  if (rows >= support_size) {
    for (std::size_t i = 0; i < support_size; ++i) out.push_back(i);
    return out;
  }
  for (std::size_t r = 1; r <= rows; ++r) {
    const std::size_t idx = (r * support_size) / rows - 1;
    if (out.empty() || out.back() != idx) out.push_back(idx);
  }
  return out;
}

AbscissaEstimate bohr_cahen_sigma_a(const SparseSeries& d,
                                    std::optional<DivergenceWitness> witness,
                                    const AbscissaOptions& options) {
  if (d.side() != Side::kDirichlet) {
    throw SideMismatch("bohr_cahen_sigma_a needs a Dirichlet-side series");
  }
  if (d.empty()) throw InvalidInput("bohr_cahen_sigma_a needs a nonempty series");
  AbscissaEstimate est;
  est.sigma_a_lower = std::numeric_limits<double>::quiet_NaN();
  est.certificate_sigma = std::numeric_limits<double>::quiet_NaN();

  AbsSumProfile profile(d, 0.0);
  const auto& idx = profile.index();
  for (std::size_t i : support_schedule(idx.size(), options.max_rows)) {
    est.table.push_back({idx.index_of(i), idx.entries()[i].log_n / std::log(10.0),
                         profile.prefix(i + 1)});
  }

  const double log_max = idx.entries().back().log_n;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t count = 0;
  for (const auto& row : est.table) {
    const double x = row.log10_n * std::log(10.0);
    if (x < 0.5 * log_max || row.a_n <= 0.0) continue;
    const double y = std::log(row.a_n);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++count;
  }
  double slope = 0.0;
  const double denom = static_cast<double>(count) * sxx - sx * sx;
  if (count >= 2 && denom > 1e-12 * std::max(1.0, sxx)) {
    slope = (static_cast<double>(count) * sxy - sx * sy) / denom;
  }
  est.sigma_a_bohr_cahen = std::max(0.0, slope);

  if (witness && witness->passed) {
    est.sigma_a_lower = witness->sigma;
    est.certificate_sigma = witness->sigma;
    est.consistent = est.sigma_a_lower <= est.sigma_a_bohr_cahen + options.tolerance;
  }
  return est;
}

}  // namespace bohrlab
