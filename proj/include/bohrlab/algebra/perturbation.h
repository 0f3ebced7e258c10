#ifndef BOHRLAB_ALGEBRA_PERTURBATION_H_
#define BOHRLAB_ALGEBRA_PERTURBATION_H_

#include <cstdint>
#include <span>
#include <vector>

#include "bohrlab/algebra/membership.h"
#include "bohrlab/construct/certificate.h"
#include "bohrlab/series/sparse_series.h"
#include "bohrlab/series/theta.h"

namespace bohrlab {

struct PerturbationOptions {
  // Blocks of D2; 0 picks the largest count whose D^k expansion and the
  // ledger's pairwise products stay within max_terms.
  std::uint32_t d2_blocks = 0;
  std::uint32_t max_d2_blocks = 4;
  std::size_t max_terms = 1'000'000;
  double tolerance = 1e-12;  // on coefficient values in the identities
};

struct PerturbationResult {
  SparseSeries D, D1, D2, D3, D4;
  std::uint32_t w = 0;
  double epsilon = 0;
  std::uint32_t r = 0;          // max degree of D1 (0 for D1 = 0)
  std::uint32_t r_used = 0;     // max(r, 1); enters w and deg D2
  std::uint32_t d2_degree = 0;  // m + r_used
  std::uint32_t d2_blocks = 0;
  std::uint32_t d2_prime = 0;
  MembershipQuery query;
  Progression theta;
  std::vector<SparseSeries> powers;  // D, ..., D^k
  // Sup of D2 is at least the witness value and at most the proven bound.
  double d2_sup_lower = 0, d2_sup_upper = 0;
  double distance_bound_sup = 0;  // (eps/2)(1 + sup D2 / k)
  double distance_bound_sum = 0;  // (eps/2)(1 + sum|c(D2)| / k)
  Certificate homogeneity;        // rule all_hold
  // Growth inequality at lambda = (0,..,0,1/j), where |lambda_k| = 1/j.
  Certificate witness_bounds;
};

// D = D1 + 2^{-ws} D4 with D4 = (eps/2)(1 + D2/k) and D2 the sup-normalised
// Bohr image of degree m + max(r,1) on theta scaled to sup 1/2.
PerturbationResult density_perturbation(const SparseSeries& d1, double epsilon,
                                        const MembershipQuery& query, const Progression& theta,
                                        const PerturbationOptions& options = {});

// The Omega-tilde ledger (rule all_hold) recomputed from the components
// D, D1, D2, D3, D4 and the powers of D alone.
Certificate homogeneity_ledger(const PerturbationResult& result, double tol = 1e-12);

// lhs = A_N(D_lambda, delta_m), rhs = (eps/2)^k 2^{-wk delta_m} |lambda_k|
// A_{N / 2^{wk}}(D2, delta_m) at every support index of D_lambda and every
// 2^{wk} n with n in supp D2. rhs_literal uses A_N(D2, delta_m) and is
// reported only.
Certificate growth_certificate_inequality(const PerturbationResult& result,
                                          std::span<const Complex> lambda,
                                          std::size_t sample = 0);
// One table over many lambdas (column sample indexes meta lambda_samples).
Certificate growth_certificate_samples(const PerturbationResult& result,
                                      const std::vector<std::vector<Complex>>& samples);

// Rebuilds a result (powers, bounds, both certificates) from the five
// components and the homogeneity certificate's meta.
PerturbationResult perturbation_from_parts(const SparseSeries& D, const SparseSeries& D1,
                                           const SparseSeries& D2, const SparseSeries& D3,
                                           const SparseSeries& D4, const nlohmann::json& meta);

// Termwise equality: identical supports, coefficients within tol * max(1,|a|).
bool termwise_equal(const SparseSeries& a, const SparseSeries& b, double tol,
                    std::size_t* mismatches = nullptr);

}  // namespace bohrlab

#endif  // BOHRLAB_ALGEBRA_PERTURBATION_H_
