#ifndef BOHRLAB_SERIES_SPARSE_SERIES_H_
#define BOHRLAB_SERIES_SPARSE_SERIES_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "bohrlab/series/multi_index.h"
#include "bohrlab/series/prime_table.h"

namespace bohrlab {

using Complex = std::complex<double>;

// Which side of the Bohr transform a series is read on. The stored data is
// the same; only evaluation and A_N care.
enum class Side { kDirichlet, kPower };

std::string_view side_name(Side side);
Side parse_side(std::string_view name);

struct Term {
  MultiIndex alpha;
  Complex coeff;
};

// Limits on intermediate products. The defaults keep coefficients exact:
// prune_below = 0 drops only exact zeros.
struct ArithmeticBudget {
  std::size_t max_terms = 10'000'000;
  double prune_below = 0.0;

  // Honours BOHRLAB_MAX_TERMS when set.
  static ArithmeticBudget from_env();
};

ArithmeticBudget& default_budget();

// Finitely supported map alpha -> coefficient, kept sorted by alpha. Values
// are immutable after construction.
class SparseSeries {
 public:
  explicit SparseSeries(Side side = Side::kDirichlet) : side_(side) {}

  // Sorts, sums coefficients of repeated alphas (or throws InvalidInput when
  // reject_duplicates), and drops zero / pruned terms.
  static SparseSeries from_terms(Side side, std::vector<Term> terms,
                                 bool reject_duplicates = false,
                                 double prune_below = 0.0);
  static SparseSeries unit(Side side);
  static SparseSeries monomial(Side side, MultiIndex alpha, Complex coeff);
  // a * n^{-s} on the Dirichlet side.
  static SparseSeries dirichlet_term(const BigInt& n, Complex coeff);

  Side side() const { return side_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  Complex coefficient(const MultiIndex& alpha) const;
  bool contains(const MultiIndex& alpha) const;
  // Same coefficients read on the other side of the Bohr transform.
  SparseSeries as(Side side) const;

  std::uint32_t max_position() const;
  std::vector<std::uint32_t> support_positions() const;
  double coefficient_sum() const;  // sum |c_alpha|
  bool has_constant_term() const {
    return !terms_.empty() && terms_.front().alpha.empty();
  }

  friend bool operator==(const SparseSeries& a, const SparseSeries& b);

 private:
  Side side_;
  std::vector<Term> terms_;
};

SparseSeries add(const SparseSeries& d, const SparseSeries& e);
SparseSeries subtract(const SparseSeries& d, const SparseSeries& e);
SparseSeries scale(Complex lambda, const SparseSeries& d);
// Coefficient at gamma is sum_{alpha+beta=gamma} D[alpha] E[beta]; on the
// Dirichlet side that is the divisor convolution.
SparseSeries multiply(const SparseSeries& d, const SparseSeries& e,
                      const ArithmeticBudget& budget = default_budget());
SparseSeries power(const SparseSeries& d, std::uint32_t q,
                   const ArithmeticBudget& budget = default_budget());
// lambda_1 D + lambda_2 D^2 + ... + lambda_k D^k.
SparseSeries combine(const SparseSeries& d, std::span<const Complex> lambda,
                     const ArithmeticBudget& budget = default_budget());
// Same as combine() with the powers D, D^2, ... already available.
SparseSeries combine_powers(std::span<const SparseSeries> powers,
                            std::span<const Complex> lambda);
// sum_i c_i D_i in one k-way merge over the sorted inputs.
SparseSeries linear_combination(std::span<const Complex> coeffs,
                                std::span<const SparseSeries* const> series);

// Multiplication by the single term n^{-s}, i.e. shift of every alpha.
SparseSeries shift(const SparseSeries& d, const MultiIndex& by);

SparseSeries homogeneous_part(const SparseSeries& d, std::uint32_t m);
// Degrees m with D^(m) != 0, ascending.
std::vector<std::uint32_t> omega_tilde(const SparseSeries& d);

double h2_norm(const SparseSeries& d);
// <D, E> = sum a_n conj(b_n).
Complex h2_inner(const SparseSeries& d, const SparseSeries& e);

}  // namespace bohrlab

#endif  // BOHRLAB_SERIES_SPARSE_SERIES_H_
