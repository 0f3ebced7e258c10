#ifndef BOHRLAB_ALGEBRA_MEMBERSHIP_H_
#define BOHRLAB_ALGEBRA_MEMBERSHIP_H_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "bohrlab/construct/certificate.h"
#include "bohrlab/series/sparse_series.h"

namespace bohrlab {

// max_{0<=i<=k-1} {(k-2)(m+r), rk + mi} + 1, with negative candidates
// allowed (they never win since rk >= 0).
std::uint32_t w_exponent(std::uint32_t k, std::uint32_t m, std::uint32_t r);

// The set D_Theta(j, k, ell, m): for all lambda in C^k with |lambda|_inf <= j
// and |lambda_k| >= 1/j some A_N(D_lambda, delta_m) exceeds ell.
struct MembershipQuery {
  std::uint32_t j = 1;
  std::uint32_t k = 2;
  double ell = 10.0;
  std::uint32_t m = 2;

  double delta_m() const { return (m - 1.0) / (2.0 * m); }
  bool in_region(std::span<const Complex> lambda) const;
  std::string region() const;
  void validate() const;
  nlohmann::json to_json() const;
  static MembershipQuery from_json(const nlohmann::json& j);
};

// `count` seeded points of the lambda region. The first ones are extreme:
// (0,..,0,1/j), (j,..,j), (-j,..,-j, 1/j) and (j,..,j, i/j); the rest have
// lambda_i uniform in the disc of radius j and |lambda_k| uniform in
// [1/j, j].
std::vector<std::vector<Complex>> sample_lambda_region(const MembershipQuery& query,
                                                       std::size_t count = 32,
                                                       std::uint64_t seed = 1);

// D, D^2, ..., D^k.
std::vector<SparseSeries> powers_of(const SparseSeries& d, std::uint32_t k,
                                    const ArithmeticBudget& budget = default_budget());

// For every sample the least scheduled N with A_N(D_lambda, delta_m) > ell.
// An empty schedule means every support index of D_lambda, which makes the
// witness the least such N overall. Rows: sample, lambda_inf, lambda_k_abs,
// witness_N_log10 (nan when absent), A_at_witness, A_max.
Certificate membership_witness(const SparseSeries& d, const MembershipQuery& query,
                               const std::vector<std::vector<Complex>>& lambda_samples,
                               const std::vector<BigInt>& schedule = {});

// Same with the powers of D already expanded.
Certificate membership_witness_powers(std::span<const SparseSeries> powers,
                                      const MembershipQuery& query,
                                      const std::vector<std::vector<Complex>>& lambda_samples,
                                      const std::vector<BigInt>& schedule = {});

nlohmann::json lambda_to_json(std::span<const Complex> lambda);
std::vector<Complex> lambda_from_json(const nlohmann::json& j);

}  // namespace bohrlab

#endif  // BOHRLAB_ALGEBRA_MEMBERSHIP_H_
