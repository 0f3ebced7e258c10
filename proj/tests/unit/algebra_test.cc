#include <cmath>
#include <random>

#include "gtest/gtest.h"

#include "bohrlab/algebra/free_algebra.h"
#include "bohrlab/algebra/membership.h"
#include "bohrlab/algebra/perturbation.h"
#include "bohrlab/error.h"
#include "bohrlab/series/dirichlet.h"
#include "bohrlab/series/index.h"
#include "bohrlab/series/theta.h"

namespace bohrlab {
namespace {

SparseSeries dir(std::initializer_list<std::pair<std::uint64_t, Complex>> terms) {
  SparseSeries out;
  for (const auto& [n, c] : terms) out = add(out, SparseSeries::dirichlet_term(n, c));
  return out;
}

// Direct transcription with signed arithmetic.
long long w_reference(long long k, long long m, long long r) {
  long long best = (k - 2) * (m + r);
  for (long long i = 0; i <= k - 1; ++i) best = std::max(best, r * k + m * i);
  return best + 1;
}

TEST(WExponent, Examples) {
  EXPECT_EQ(w_exponent(2, 2, 1), 5u);
  EXPECT_EQ(w_exponent(1, 2, 0), 1u);
}

TEST(WExponent, MatchesFormulaAndMonotone) {
  for (std::uint32_t k = 1; k <= 6; ++k) {
    for (std::uint32_t m = 2; m <= 6; ++m) {
      for (std::uint32_t r = 0; r <= 5; ++r) {
        const auto w = w_exponent(k, m, r);
        EXPECT_EQ(static_cast<long long>(w), w_reference(k, m, r));
        EXPECT_GE(w_exponent(k + 1, m, r), w);
        EXPECT_GE(w_exponent(k, m + 1, r), w);
        EXPECT_GE(w_exponent(k, m, r + 1), w);
      }
    }
  }
}

TEST(Query, RegionAndValidation) {
  MembershipQuery q;
  EXPECT_DOUBLE_EQ(q.delta_m(), 0.25);
  const Complex inside[] = {0.5, 1.0};
  const Complex small_last[] = {0.5, 0.5};
  const Complex too_big[] = {1.5, 1.0};
  EXPECT_TRUE(q.in_region(inside));
  EXPECT_FALSE(q.in_region(small_last));
  EXPECT_FALSE(q.in_region(too_big));
  MembershipQuery bad;
  bad.m = 1;
  EXPECT_THROW(bad.validate(), InvalidInput);
  bad = {};
  bad.j = 0;
  EXPECT_THROW(bad.validate(), InvalidInput);
  const auto round = MembershipQuery::from_json(q.to_json());
  EXPECT_EQ(round.to_json(), q.to_json());
}

TEST(Query, SamplesStayInRegion) {
  MembershipQuery q;
  q.j = 2;
  q.k = 3;
  const auto s = sample_lambda_region(q, 40, 7);
  ASSERT_EQ(s.size(), 40u);
  for (const auto& l : s) {
    ASSERT_EQ(l.size(), 3u);
    EXPECT_TRUE(q.in_region(l));
  }
  EXPECT_NEAR(std::abs(s[0].back()), 0.5, 1e-15);
  EXPECT_EQ(sample_lambda_region(q, 40, 7), s);
}

class DefaultPerturbation : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    result_ = new PerturbationResult(
        density_perturbation(dir({{1, 1.0}, {3, 2.0}}), 32, MembershipQuery{}, Progression{0, 1}));
  }
  static void TearDownTestSuite() { delete result_; }
  static PerturbationResult* result_;
};
PerturbationResult* DefaultPerturbation::result_ = nullptr;

TEST_F(DefaultPerturbation, Shape) {
  const auto& r = *result_;
  EXPECT_EQ(r.r, 1u);
  EXPECT_EQ(r.w, 5u);
  EXPECT_EQ(r.d2_degree, 3u);
  EXPECT_EQ(omega_tilde(r.D2), std::vector<std::uint32_t>{3});
  EXPECT_LT(r.distance_bound_sup, r.epsilon);
  EXPECT_LE(r.d2_sup_lower, 0.5 * (1 + 1e-12));
  EXPECT_LE(r.d2_sup_lower, r.d2_sup_upper * (1 + 1e-12));
  EXPECT_TRUE(r.homogeneity.verdict);
  EXPECT_TRUE(r.witness_bounds.verdict);
}

TEST_F(DefaultPerturbation, ReconstructionAndNewton) {
  const auto& r = *result_;
  const BigInt two_w = BigInt(1) << r.w;
  EXPECT_TRUE(termwise_equal(r.D, add(r.D1, shift(r.D4, index_to_multiindex(two_w))), 1e-12));
  const auto k = static_cast<double>(r.query.k);
  const auto base = add(SparseSeries::unit(Side::kDirichlet), scale(1.0 / k, r.D2));
  const auto lhs = power(base, r.query.k);
  const auto rhs = add(add(SparseSeries::unit(Side::kDirichlet), r.D2), r.D3);
  EXPECT_TRUE(termwise_equal(lhs, rhs, 1e-12));
  EXPECT_GT(omega_tilde(r.D3).front(), r.query.m + r.r);
}

TEST_F(DefaultPerturbation, TopSlotIsScaledD2) {
  // The degree wk + d2 part of D^k is (eps/2)^k 2^{-wks} D2.
  const auto& r = *result_;
  const std::uint32_t k = r.query.k;
  const std::uint32_t deg = r.w * k + r.d2_degree;
  const auto slot = homogeneous_part(r.powers.back(), deg);
  const BigInt shift_n = BigInt(1) << (r.w * k);
  const auto expected =
      scale(std::pow(r.epsilon / 2, k), shift(r.D2, index_to_multiindex(shift_n)));
  EXPECT_TRUE(termwise_equal(slot, expected, 1e-12));
}

TEST_F(DefaultPerturbation, GrowthInequalityAndMembership) {
  const auto& r = *result_;
  const auto samples = sample_lambda_region(r.query, 32, 1);
  for (const auto& l : samples) {
    const auto c = growth_certificate_inequality(r, l);
    EXPECT_TRUE(c.verdict);
    const auto lhs = c.column("lhs"), rhs = c.column("rhs");
    for (const auto& row : c.rows) EXPECT_GE(row[lhs], row[rhs] * (1 - 1e-9));
    EXPECT_GT(c.rows.back()[rhs], c.rows.front()[rhs]);
  }
  const auto mem = membership_witness_powers(r.powers, r.query, samples);
  EXPECT_TRUE(mem.verdict);
  EXPECT_FALSE(mem.inconclusive);
}

TEST_F(DefaultPerturbation, ZeroLastLambdaGivesZeroRhs) {
  const Complex l[] = {1.0, 0.0};
  const auto c = growth_certificate_inequality(*result_, std::vector<Complex>(l, l + 2));
  for (const auto& row : c.rows) EXPECT_EQ(row[c.column("rhs")], 0.0);
  EXPECT_TRUE(c.verdict);
}

TEST_F(DefaultPerturbation, RebuiltFromParts) {
  const auto& r = *result_;
  const auto again = perturbation_from_parts(r.D, r.D1, r.D2, r.D3, r.D4, r.homogeneity.meta);
  EXPECT_EQ(again.homogeneity.rows, r.homogeneity.rows);
  EXPECT_EQ(again.witness_bounds.rows, r.witness_bounds.rows);
}

TEST(Perturbation, SmallEpsilonLedgerHoldsMembershipInconclusive) {
  const MembershipQuery q;
  const auto r = density_perturbation(dir({{1, 1.0}, {3, 2.0}}), 0.5, q, Progression{0, 1});
  EXPECT_TRUE(r.homogeneity.verdict);
  for (const auto& row : r.homogeneity.rows) EXPECT_EQ(row[r.homogeneity.column("holds")], 1.0);
  const auto mem = membership_witness_powers(r.powers, q, sample_lambda_region(q, 32, 1));
  EXPECT_FALSE(mem.verdict);
  EXPECT_TRUE(mem.inconclusive);
}

TEST(Perturbation, ZeroBase) {
  const double eps = 3.0;
  const auto r = density_perturbation(SparseSeries(), eps, MembershipQuery{}, Progression{0, 1});
  EXPECT_EQ(r.r, 0u);
  EXPECT_LT(r.D.coefficient_sum(), eps);
  EXPECT_TRUE(r.homogeneity.verdict);
  const BigInt two_w = BigInt(1) << r.w;
  EXPECT_TRUE(termwise_equal(r.D, shift(r.D4, index_to_multiindex(two_w)), 0.0));
}

TEST(Perturbation, SingleFactor) {
  MembershipQuery q;
  q.k = 1;
  const auto r = density_perturbation(dir({{1, 1.0}, {3, 2.0}}), 1.0, q, Progression{0, 1});
  EXPECT_TRUE(r.D3.empty());
  EXPECT_EQ(r.w, w_exponent(1, 2, 1));
  EXPECT_TRUE(r.homogeneity.verdict);
}

TEST(Perturbation, Rejections) {
  EXPECT_THROW(density_perturbation(dir({{1, 1.0}}), 0.0, MembershipQuery{}, Progression{0, 1}),
               InvalidInput);
  EXPECT_THROW(density_perturbation(dir({{1, 1.0}}), -1.0, MembershipQuery{}, Progression{0, 1}),
               InvalidInput);
  // 2 = p_1 lies off the even positions.
  EXPECT_THROW(density_perturbation(dir({{2, 1.0}}), 1.0, MembershipQuery{}, Progression{0, 2}),
               InvalidInput);
}

TEST(Perturbation, CoefficientStability) {
  // |a_n(D) - a_n(E)| never exceeds the coefficient sum of D - E.
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1e-3, 1e-3);
  const auto d = dir({{1, 1.0}, {3, 2.0}, {10, Complex(0, 1)}});
  for (int trial = 0; trial < 20; ++trial) {
    const auto e = add(d, dir({{3, Complex(u(rng), u(rng))}, {12, u(rng)}}));
    const double sum = subtract(d, e).coefficient_sum();
    for (std::uint64_t n : {1, 3, 10, 12}) {
      const MultiIndex a = index_to_multiindex(n);
      EXPECT_LE(std::abs(d.coefficient(a) - e.coefficient(a)), sum + 1e-18);
    }
  }
}

TEST(Membership, ZeroThresholdPicksFirstIndex) {
  MembershipQuery q;
  q.k = 1;
  q.ell = 0;
  const auto d = dir({{6, 0.25}, {2, 1.0}, {35, 3.0}});
  const std::vector<std::vector<Complex>> samples = {{1.0}, {Complex(0, 1)}};
  const auto c = membership_witness(d, q, samples);
  EXPECT_TRUE(c.verdict);
  for (const auto& row : c.rows) {
    EXPECT_NEAR(row[c.column("witness_N_log10")], std::log10(2.0), 1e-15);
  }
}

TEST(Membership, TinyCoefficientsInconclusive) {
  MembershipQuery q;
  q.k = 1;
  q.ell = 1e6;
  const auto d = dir({{2, 1e-9}, {3, 1e-9}});
  const auto c = membership_witness(d, q, {{1.0}});
  EXPECT_FALSE(c.verdict);
  EXPECT_TRUE(c.inconclusive);
  EXPECT_TRUE(std::isnan(c.rows[0][c.column("witness_N_log10")]));
}

TEST(Membership, ScheduleRestrictsCandidates) {
  MembershipQuery q;
  q.k = 1;
  q.ell = 0.5;
  const auto d = dir({{2, 1.0}, {3, 1.0}});
  // Unrestricted: A_2 = 2^{-1/4} > 0.5 already.
  const auto free = membership_witness(d, q, {{1.0}});
  EXPECT_NEAR(free.rows[0][free.column("witness_N_log10")], std::log10(2.0), 1e-15);
  const auto sched = membership_witness(d, q, {{1.0}}, {BigInt(100)});
  EXPECT_NEAR(sched.rows[0][sched.column("witness_N_log10")], 2.0, 1e-15);
}

TEST(Split, SingleLeadingTerm) {
  const Progression theta{1, 2};  // positions 3, 5, 7, ...; p_4 = 7 lies off it
  const Complex lambda[] = {1.0};
  const SparseSeries ds[] = {dir({{7, 5.0}})};
  const auto s = n0_split(lambda, ds, dir({{5, 1.0}}), theta);
  EXPECT_EQ(s.n0, BigInt(7));
  EXPECT_TRUE(s.tilde.empty());
  EXPECT_TRUE(termwise_equal(s.hat, dir({{7, 5.0}}), 0.0));
  EXPECT_EQ(s.violations, 0u);
  EXPECT_EQ(s.identity_violations, 0u);
}

TEST(Split, ConstantCoefficients) {
  const Progression theta{1, 2};  // holds position 5, so 11 = p_5 is theta-smooth
  const Complex lambda[] = {1.0, 1.0};
  const SparseSeries ds[] = {dir({{1, 1.0}}), dir({{1, 1.0}})};
  const auto s = n0_split(lambda, ds, dir({{11, 1.0}}), theta);
  EXPECT_EQ(s.n0, BigInt(1));
  EXPECT_TRUE(s.tilde.empty());
  EXPECT_TRUE(termwise_equal(s.hat, dir({{1, 1.0}, {11, 1.0}}), 0.0));
}

TEST(Split, Rejections) {
  const Progression theta{1, 2};
  const Complex lambda[] = {1.0};
  const SparseSeries on_theta[] = {dir({{5, 1.0}})};
  EXPECT_THROW(n0_split(lambda, on_theta, dir({{5, 1.0}}), theta), InvalidInput);
  const SparseSeries fine[] = {dir({{7, 1.0}})};
  EXPECT_THROW(n0_split(lambda, fine, dir({{7, 1.0}}), theta), InvalidInput);
  const Complex zero[] = {0.0};
  EXPECT_THROW(n0_split(zero, fine, dir({{5, 1.0}}), theta), InvalidInput);
}

TEST(Split, TildeAvoidsLeadingIndexClass) {
  // Oracle: n = n0 * k with k theta-smooth iff n / n0 is an integer whose
  // prime factors all sit at theta positions.
  const Progression theta{0, 2};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto c = random_combination(rng, theta);
    const auto s = n0_split(c.lambda, c.ds, c.d, theta);
    EXPECT_EQ(s.identity_violations, 0u);
    EXPECT_EQ(s.violations, 0u);
    for (const auto& t : s.tilde.terms()) {
      const BigInt n = multiindex_to_index(t.alpha);
      if (n % s.n0 != 0) continue;
      const auto rest = index_to_multiindex(n / s.n0);
      bool smooth = true;
      for (auto pos : rest.support()) smooth = smooth && theta.contains(pos);
      EXPECT_FALSE(smooth) << "index " << n << " n0 " << s.n0;
    }
  }
}

TEST(Split, DisjointnessCertificate) {
  const auto c = disjointness_certificate(20, 3, Progression{0, 2});
  EXPECT_EQ(c.rows.size(), 20u);
  EXPECT_TRUE(c.verdict);
}

MultiPoly poly(std::size_t vars,
               std::initializer_list<std::pair<std::vector<std::uint32_t>, Complex>> terms) {
  std::vector<MultiPoly::Monomial> mons;
  for (const auto& [e, c] : terms) mons.push_back({e, c});
  return MultiPoly(vars, std::move(mons));
}

// Two generators on disjoint primes: positions 1 (2) and 2 (3).
std::vector<SparseSeries> two_generators() {
  return {dir({{2, 1.0}, {4, 3.0}}), dir({{3, Complex(0, 1)}, {9, 0.5}})};
}

TEST(FreeAlgebra, Identity) {
  const auto g = two_generators();
  const auto r = free_algebra_eval(std::span(g).first(1), poly(1, {{{1}, 1.0}}));
  EXPECT_TRUE(termwise_equal(r.value, g[0], 0.0));
}

TEST(FreeAlgebra, ProductSupport) {
  const auto g = two_generators();
  const auto r = free_algebra_eval(g, poly(2, {{{1, 1}, 1.0}}));
  EXPECT_EQ(r.value.size(), g[0].size() * g[1].size());
  for (const auto& a : g[0].terms()) {
    for (const auto& b : g[1].terms()) {
      EXPECT_NEAR(std::abs(r.value.coefficient(a.alpha + b.alpha) - a.coeff * b.coeff), 0, 1e-15);
    }
  }
}

TEST(FreeAlgebra, RegroupingMatchesNaive) {
  const auto g = two_generators();
  const auto q = poly(2, {{{2, 0}, 1.0}, {{0, 1}, 1.0}});
  const auto r = free_algebra_eval(g, q);
  const auto oracle = add(multiply(g[0], g[0]), g[1]);
  EXPECT_TRUE(termwise_equal(r.value, oracle, 1e-15));
  EXPECT_TRUE(termwise_equal(r.value, naive_eval(g, q), 1e-15));
  EXPECT_EQ(r.last, 1u);

  std::mt19937_64 rng(5);
  std::uniform_int_distribution<int> e(0, 2), c(-3, 3);
  const std::vector<SparseSeries> three = {dir({{2, 1.0}, {8, -1.0}}), dir({{3, 2.0}}),
                                           dir({{5, 1.0}, {25, Complex(1, 1)}})};
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<MultiPoly::Monomial> mons;
    for (int t = 0; t < 4; ++t) {
      std::vector<std::uint32_t> ex = {static_cast<std::uint32_t>(e(rng)),
                                       static_cast<std::uint32_t>(e(rng)),
                                       static_cast<std::uint32_t>(e(rng))};
      if (ex == std::vector<std::uint32_t>{0, 0, 0}) ex[0] = 1;
      mons.push_back({ex, Complex(c(rng), c(rng))});
    }
    const MultiPoly q3(3, mons);
    if (q3.is_zero()) continue;
    EXPECT_TRUE(termwise_equal(free_algebra_eval(three, q3).value, naive_eval(three, q3), 1e-12));
  }
}

TEST(FreeAlgebra, Rejections) {
  const auto g = two_generators();
  EXPECT_THROW(free_algebra_eval(g, poly(2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}})), InvalidInput);
  const std::vector<SparseSeries> shared = {dir({{2, 1.0}}), dir({{6, 1.0}})};
  EXPECT_THROW(free_algebra_eval(shared, poly(2, {{{1, 1}, 1.0}})), InvalidInput);
  EXPECT_THROW(free_algebra_eval(g, poly(3, {{{1, 1, 1}, 1.0}})), InvalidInput);
}

TEST(FreeAlgebra, PolyJsonRoundTrip) {
  const auto q = poly(2, {{{2, 0}, Complex(1, -2)}, {{0, 1}, 0.5}});
  const auto back = MultiPoly::from_json(q.to_json());
  EXPECT_EQ(back.to_json(), q.to_json());
}

TEST(Independence, Examples) {
  const auto g = two_generators();
  const auto constant = independence_witness(g, poly(1, {{{0}, 3.0}}));
  ASSERT_TRUE(constant.has_value());
  EXPECT_NEAR(std::abs(constant->q_value), 3.0, 1e-15);

  const auto linear = independence_witness(std::span(g).first(1), poly(1, {{{1}, 1.0}}));
  ASSERT_TRUE(linear.has_value());
  EXPECT_GT(std::abs(linear->values[0]), 0.0);
  for (auto pos : linear->point.positions()) EXPECT_LE(std::abs(linear->point.at(pos)), 0.9);

  // xy - yx merges to the zero polynomial.
  const auto zero = poly(2, {{{1, 1}, 1.0}, {{1, 1}, -1.0}});
  EXPECT_TRUE(zero.is_zero());
  EXPECT_FALSE(independence_witness(g, zero).has_value());
}

}  // namespace
}  // namespace bohrlab
