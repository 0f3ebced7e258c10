#ifndef BOHRLAB_ALGEBRA_FREE_ALGEBRA_H_
#define BOHRLAB_ALGEBRA_FREE_ALGEBRA_H_

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "json.hpp"

#include "bohrlab/construct/certificate.h"
#include "bohrlab/series/poly_point.h"
#include "bohrlab/series/sparse_series.h"
#include "bohrlab/series/theta.h"

namespace bohrlab {

// Q in C[z_1..z_N] in expanded form; like monomials are merged and zero
// coefficients dropped.
class MultiPoly {
 public:
  struct Monomial {
    std::vector<std::uint32_t> exponents;
    Complex coeff;
  };

  MultiPoly() = default;
  MultiPoly(std::size_t variables, std::vector<Monomial> terms);

  std::size_t variables() const { return variables_; }
  const std::vector<Monomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool has_constant_term() const;
  // Largest variable index (0-based) with a positive exponent, or -1.
  int last_variable() const;
  std::uint32_t max_exponent(std::size_t var) const;
  Complex evaluate(std::span<const Complex> z) const;

  // [{"exponents":[e1..eN],"re":x,"im":y}, ...]
  nlohmann::json to_json() const;
  static MultiPoly from_json(const nlohmann::json& j);

 private:
  std::size_t variables_ = 0;
  std::vector<Monomial> terms_;
};

struct FreeAlgebraResult {
  SparseSeries value;
  std::size_t last = 0;            // generator used for the regrouping
  std::vector<SparseSeries> L;     // L_m(D_1..D_{last-1}), m = 0..M
  std::vector<MultiPoly> L_polys;  // the L_m themselves
};

// Q(D_1..D_N) = sum_m L_m(D_1..D_{N-1}) D_N^m, regrouped by powers of the
// last generator that Q actually uses. Throws InvalidInput on a constant
// term, on generators sharing a prime position, or a size mismatch.
FreeAlgebraResult free_algebra_eval(std::span<const SparseSeries> generators, const MultiPoly& q,
                                    const ArithmeticBudget& budget = default_budget());

// Direct sum of c * prod D_i^{e_i}; the test oracle for the regrouping.
SparseSeries naive_eval(std::span<const SparseSeries> generators, const MultiPoly& q,
                        const ArithmeticBudget& budget = default_budget());

struct IndependenceConfig {
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  double radius = 0.9;
  double threshold = 1e-8;
};

struct IndependenceWitness {
  PolyPoint point;              // v_0 = pi_1(w_1) + ... + pi_N(w_N)
  std::vector<Complex> values;  // f_l(v_0)
  Complex q_value;
  std::size_t sample = 0;
};

// Samples v_0 coordinate-wise on each generator's own support positions
// inside the disc of `radius`; nullopt means inconclusive.
std::optional<IndependenceWitness> independence_witness(std::span<const SparseSeries> generators,
                                                        const MultiPoly& q,
                                                        const IndependenceConfig& config = {});

struct N0Split {
  BigInt n0;
  MultiIndex n0_alpha;
  SparseSeries full, tilde, hat;
  // Terms of tilde at n0 * (theta-smooth), and of full - (tilde + hat).
  std::size_t violations = 0;
  std::size_t identity_violations = 0;
};

// sum_m lambda_m D_m D^m = tilde + n0^{-s} sum_m lambda_m a_{m,n0} D^m with
// n0 the least index of the leading D_N. D_m must avoid theta and D must
// be theta-supported.
N0Split n0_split(std::span<const Complex> lambda, std::span<const SparseSeries> ds,
                 const SparseSeries& d, const ThetaSet& theta,
                 const ArithmeticBudget& budget = default_budget());

// A seeded random instance for n0_split: D on theta (progression), D_m off
// theta, N in [1, 3], small integer-ish coefficients.
struct Combination {
  std::vector<Complex> lambda;
  std::vector<SparseSeries> ds;
  SparseSeries d;
};
Combination random_combination(std::mt19937_64& rng, const Progression& theta);

// One row per combination: combination, n0_log10, tilde_terms, hat_terms,
// violations, identity_violations; rule zero_violations.
Certificate disjointness_certificate(std::size_t count, std::uint64_t seed,
                                     const Progression& theta);

}  // namespace bohrlab

#endif  // BOHRLAB_ALGEBRA_FREE_ALGEBRA_H_
