#ifndef BOHRLAB_SERIES_POLY_POINT_H_
#define BOHRLAB_SERIES_POLY_POINT_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bohrlab/series/sparse_series.h"

namespace bohrlab {

// A point z of a finite polydisc, stored densely by prime position.
class PolyPoint {
 public:
  PolyPoint() = default;

  void set(std::uint32_t position, Complex z);
  bool has(std::uint32_t position) const {
    return position < present_.size() && present_[position];
  }
  Complex at(std::uint32_t position) const;
  std::vector<std::uint32_t> positions() const;
  std::size_t dimension() const;

  // Merges coordinates of `other`; the two must not share a position.
  void absorb(const PolyPoint& other);
  // z -> e^{i phi} z on every stored coordinate.
  void rotate(double phi);

 private:
  std::vector<Complex> values_;
  std::vector<bool> present_;
};

// Power-side evaluation sum c_alpha z^alpha. Throws InvalidInput when a
// support position has no coordinate or a coordinate lies outside the
// closed unit disc.
Complex evaluate_power(const SparseSeries& d, const PolyPoint& z);

// lower = max |D(z)| found over seeded random polytorus points refined by
// coordinate-wise phase alignment (plus any caller-supplied candidates);
// upper = sum |c_alpha|.
struct SupNormEstimate {
  double lower = 0.0;
  double upper = 0.0;
  PolyPoint argmax;
};

struct SupNormOptions {
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  std::size_t refined_starts = 4;   // best random points that get ascent
  std::size_t sweeps = 8;           // coordinate passes per refinement
  std::size_t phase_grid = 64;      // trial phases per coordinate
};

SupNormEstimate sup_norm_estimate(const SparseSeries& d,
                                  const SupNormOptions& options = {},
                                  std::span<const PolyPoint> candidates = {});

}  // namespace bohrlab

#endif  // BOHRLAB_SERIES_POLY_POINT_H_
