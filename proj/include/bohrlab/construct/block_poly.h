#ifndef BOHRLAB_CONSTRUCT_BLOCK_POLY_H_
#define BOHRLAB_CONSTRUCT_BLOCK_POLY_H_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "bohrlab/construct/certificate.h"
#include "bohrlab/construct/params.h"
#include "bohrlab/construct/unimodular.h"
#include "bohrlab/series/poly_point.h"
#include "bohrlab/series/sparse_series.h"

namespace bohrlab {

// R_k for (p, k, m), built once per process.
std::shared_ptr<const UnimodularPoly> cached_unimodular_poly(std::uint32_t p, std::uint32_t k,
                                                             std::uint32_t m);

struct BlockPolynomial {
  std::uint32_t k = 0;
  SparseSeries q{Side::kPower};
  PolyPoint witness;        // on B^(k)
  double witness_value = 0;  // |Q_k(witness)|
  double norm_bound = 0;     // 1/k^2
  double coefficient_min = 0;
  std::string construction;
};

// Q_k = (1/k^2) p^{-k(m+1)/2} R_k with variable j moved to position n_k^j.
BlockPolynomial make_Qk(const BlockScheme& scheme, const ConstructionParams& params,
                        std::uint32_t k);

struct BlockPoly {
  SparseSeries p{Side::kPower};
  std::vector<BlockPolynomial> blocks;
  // Block witnesses rotated so that every Q_k contributes |Q_k(z_k)| with
  // the same (zero) phase; |P(witness)| = sum of those.
  PolyPoint witness;
  double witness_value = 0;
  double norm_bound = 0;  // sum_{k <= K} 1/k^2
};

// Sum of Q_1..Q_depth; throws BudgetExceeded beyond max_terms.
BlockPoly make_P(const BlockScheme& scheme, const ConstructionParams& params,
                 std::size_t max_terms = default_budget().max_terms);

// Largest K' <= K whose blocks together hold at most max_terms monomials
// (at least 1).
std::uint32_t effective_depth(std::uint32_t p, std::uint32_t m, std::uint32_t K,
                              std::size_t max_terms);

// Per-block rows k, block_sum, lower_bound, dirichlet_sum, transfer_floor.
Certificate certify_growth(const SparseSeries& P, const BlockScheme& scheme,
                           const ConstructionParams& params);

// Rows block (0 = P itself), lower, upper, bound.
Certificate certify_norms(const BlockPoly& bp, const BlockScheme& scheme,
                          const ConstructionParams& params, const SupNormOptions& options = {});
// Same table from P alone: Q_k is the restriction of P to B^(k). The meta
// records everything needed to rebuild the rows.
Certificate certify_norms(const SparseSeries& P, const BlockScheme& scheme,
                          std::span<const PolyPoint> block_witnesses, const PolyPoint& p_witness,
                          double safety_factor, const SupNormOptions& options = {});

// Terms of P whose variables all lie in B^(k).
SparseSeries restrict_to_block(const SparseSeries& P, const BlockScheme& scheme, std::uint32_t k);

enum class Normalization { kSup, kH2 };

struct DkmOptions {
  std::uint32_t p = 0;   // 0: 5 when M < 5, else the least prime > M
  std::uint32_t K = 6;
  std::size_t max_terms = 1'000'000;
  double ell = 10.0;     // reported: first block boundary with A_N > ell
};

struct DirichletConstruction {
  SparseSeries d;              // Dirichlet side, normalised
  BlockScheme scheme;
  std::uint32_t depth = 0;     // blocks actually built
  double scale = 1;            // d = scale * B(P)
  double norm_estimate = 0;    // sup (witness) or h2 norm of B(P)
  PolyPoint witness;           // |d(witness)| = scale * norm_estimate for sup
  Certificate growth;          // A_N(d, delta_m) at block boundaries
};

// Bohr image of P on theta at homogeneity M with the growth table at
// sigma = (m-1)/(2m).
DirichletConstruction make_Dkm(const Progression& theta, std::uint32_t m, std::uint32_t M,
                               Normalization norm, const DkmOptions& options = {});

// A_N(d, sigma) at the largest index of each block; rule strictly_increasing.
Certificate dirichlet_growth_certificate(const SparseSeries& d, const BlockScheme& scheme,
                                         double sigma, double ell);

// u = r, v = count + 1 for r = 1..count.
std::vector<Progression> disjoint_theta_family(std::size_t count);

std::uint32_t default_prime_above(std::uint32_t M);

}  // namespace bohrlab

#endif  // BOHRLAB_CONSTRUCT_BLOCK_POLY_H_
