#ifndef BOHRLAB_CONSTRUCT_PARAMS_H_
#define BOHRLAB_CONSTRUCT_PARAMS_H_

#include <cstdint>
#include <vector>

#include "json.hpp"

#include "bohrlab/series/theta.h"

namespace bohrlab {

// Theta split into consecutive blocks B^(1), B^(2), ... of sizes p, p^2, ...
struct BlockScheme {
  Progression theta;
  std::uint32_t p = 0;
  std::uint32_t m = 0;
  std::vector<std::vector<std::uint64_t>> blocks;  // actual positions u + kv

  std::size_t depth() const { return blocks.size(); }
  // 1-based block of `position`, or 0 when the position lies in no block.
  std::uint32_t block_of(std::uint64_t position) const;
  std::uint64_t max_position() const;
};

// Throws InvalidInput when p is not a prime > m, v = 0, or a position
// does not fit a 32-bit prime index.
BlockScheme make_blocks(std::uint64_t u, std::uint64_t v, std::uint32_t p,
                        std::uint32_t K, std::uint32_t m);

struct ConstructionParams {
  std::uint32_t m = 2;
  std::uint32_t p = 5;
  std::uint32_t K = 4;
  double epsilon = 0.5;
  double delta = 0.0;
  double b = 0.0;
  double eta = 0.0;
  bool eta_exhaustive = false;
  double safety_factor = 1.05;

  // delta from 2m/(m-1) + eps = (2m/(m-1)) / (1 - delta); b the midpoint of
  // (p^{-delta/(1-delta)}, 1); eta from unimodular_sum_floor.
  static ConstructionParams solve(std::uint32_t m, std::uint32_t p, std::uint32_t K,
                                  double epsilon);
  // Same with delta and b given; epsilon follows from delta.
  static ConstructionParams with_delta(std::uint32_t m, std::uint32_t p, std::uint32_t K,
                                       double delta, double b);

  double base_exponent() const { return 2.0 * m / (m - 1.0); }   // 2m/(m-1)
  double exponent() const { return base_exponent() + epsilon; }  // t
  double geometric_base() const;    // p^delta b^{1-delta}
  double geometric_ratio() const;   // (p^delta b^{1-delta})^{(m-1)/2}
  double dirichlet_exponent() const { return 1.0 / (exponent() * (1.0 + epsilon)); }

  // Throws InvalidInput when an invariant fails.
  void validate() const;
  nlohmann::json to_json() const;
  // Inverse of to_json; validates.
  static ConstructionParams from_json(const nlohmann::json& j);
};

// w_l = (b/p)^{k (m-1)/(2m) (1-delta)} on B^(k), 0 elsewhere.
class WeightSequence {
 public:
  WeightSequence(const BlockScheme& scheme, const ConstructionParams& params);

  double at(std::uint64_t position) const;
  double block_weight(std::uint32_t k) const { return weights_.at(k - 1); }
  // sum_l w_l^t over the stored blocks, summed position by position.
  double lp_sum() const;
  // The proof's K = (u+v)^{1/t} ||w||_t, using the full geometric series
  // b/(1-b) for ||w||_t^t.
  double transfer_constant() const;

 private:
  const BlockScheme* scheme_;
  ConstructionParams params_;
  std::vector<double> weights_;
};

}  // namespace bohrlab

#endif  // BOHRLAB_CONSTRUCT_PARAMS_H_
