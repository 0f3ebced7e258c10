#include <cmath>
#include <numbers>
#include <random>

#include "gtest/gtest.h"

#include "bohrlab/error.h"
#include "bohrlab/series/abscissa.h"
#include "bohrlab/series/dirichlet.h"
#include "bohrlab/series/index.h"
#include "bohrlab/series/poly_point.h"
#include "bohrlab/series/series_io.h"
#include "bohrlab/series/sparse_series.h"
#include "bohrlab/series/theta.h"
#include "../support/oracles.h"

namespace bohrlab {
namespace {

SparseSeries dir(std::initializer_list<std::pair<std::uint64_t, Complex>> terms) {
  SparseSeries out;
  for (const auto& [n, c] : terms) out = add(out, SparseSeries::dirichlet_term(n, c));
  return out;
}

SparseSeries from_oracle(const oracle::IntSeries& s) {
  std::vector<Term> terms;
  for (const auto& [n, c] : s) terms.push_back({index_to_multiindex(n), c});
  return SparseSeries::from_terms(Side::kDirichlet, std::move(terms), true);
}

TEST(Primes, SmallValues) {
  EXPECT_EQ(nth_prime(1), 2u);
  EXPECT_EQ(nth_prime(5), 11u);
  const auto sieve = oracle::sieve_primes(200000);
  EXPECT_EQ(nth_prime(1000), sieve[999]);
  EXPECT_EQ(nth_prime(1000), 7919u);
  for (std::size_t k = 1; k <= sieve.size(); k += 97) {
    ASSERT_EQ(nth_prime(k), sieve[k - 1]);
  }
}

TEST(Primes, PntConstantHolds) {
  auto& table = PrimeTable::global();
  table.ensure_count(20000);
  for (double eps : {0.1, 0.5}) {
    const double c = table.pnt_constant(eps, 20000);
    for (std::size_t n = 1; n <= 20000; ++n) {
      ASSERT_LE(static_cast<double>(table.nth(n)),
                c * std::pow(static_cast<double>(n), 1 + eps) * (1 + 1e-12));
    }
  }
}

TEST(Primes, BudgetIsEnforced) {
  PrimeTable small(100);
  EXPECT_EQ(small.nth(100), 541u);
  EXPECT_THROW(small.nth(101), ResourceError);
}

TEST(Index, Examples) {
  EXPECT_TRUE(index_to_multiindex(1).empty());
  EXPECT_EQ(index_to_multiindex(12), MultiIndex::from_pairs({{1, 2}, {2, 1}}));
  const BigInt big = (BigInt(1) << 50) * 7919;
  EXPECT_EQ(index_to_multiindex(big), MultiIndex::from_pairs({{1, 50}, {1000, 1}}));
  EXPECT_EQ(multiindex_to_index(MultiIndex()), 1);
  EXPECT_EQ(multiindex_to_index(MultiIndex::from_pairs({{2, 1}, {3, 1}})), 15);
  EXPECT_EQ(multiindex_to_index(MultiIndex::from_pairs({{25, 2}})), 9409);
}

TEST(Index, RoundTrip) {
  for (std::uint64_t n = 1; n <= 10000; ++n) {
    ASSERT_EQ(multiindex_to_index(index_to_multiindex(n)), n);
  }
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint32_t> pos(1, 3000), ex(1, 6), len(1, 6);
  for (int i = 0; i < 100; ++i) {
    std::map<std::uint32_t, std::uint32_t> m;
    for (std::uint32_t j = len(rng); j > 0; --j) m[pos(rng)] = ex(rng);
    const auto alpha = MultiIndex::from_pairs({m.begin(), m.end()});
    ASSERT_EQ(index_to_multiindex(multiindex_to_index(alpha)), alpha);
  }
}

TEST(Index, OmegaAdditive) {
  EXPECT_EQ(omega(MultiIndex()), 0u);
  EXPECT_EQ(omega(index_to_multiindex(12)), 3u);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<std::uint64_t> n(1, 1'000'000);
  for (int i = 0; i < 500; ++i) {
    const auto a = index_to_multiindex(n(rng));
    const auto b = index_to_multiindex(n(rng));
    ASSERT_EQ(omega(a + b), omega(a) + omega(b));
  }
}

TEST(MultiIndexTest, RejectsBadEntries) {
  EXPECT_THROW(MultiIndex::from_pairs({{0, 1}}), InvalidInput);
  EXPECT_THROW(MultiIndex::from_pairs({{2, 1}, {1, 1}}), InvalidInput);
  EXPECT_THROW(MultiIndex::from_pairs({{2, 0}}), InvalidInput);
}

TEST(Arithmetic, AddScale) {
  const auto d = dir({{1, 1.0}, {3, 1.0}});
  EXPECT_EQ(add(d, SparseSeries()), d);
  EXPECT_TRUE(add(dir({{2, 1.0}}), scale(-1.0, dir({{2, 1.0}}))).empty());
  const Complex i(0, 1);
  EXPECT_EQ(scale(i, d), dir({{1, i}, {3, i}}));
  EXPECT_THROW(add(d, d.as(Side::kPower)), SideMismatch);
}

TEST(Arithmetic, MultiplyExamples) {
  EXPECT_EQ(multiply(dir({{2, 1.0}}), dir({{3, 1.0}})), dir({{6, 1.0}}));
  const auto d = dir({{1, 1.0}, {2, 1.0}});
  EXPECT_EQ(multiply(d, d), dir({{1, 1.0}, {2, 2.0}, {4, 1.0}}));
}

TEST(Arithmetic, MultiplyMatchesDivisorConvolution) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_int_series(rng, 500, 25);
    const auto b = oracle::random_int_series(rng, 500, 25);
    const auto expect = oracle::divisor_convolution(a, b, 250000);
    const auto got = multiply(from_oracle(a), from_oracle(b));
    ASSERT_EQ(got.size(), expect.size());
    for (const auto& [n, c] : expect) {
      ASSERT_LE(std::abs(got.coefficient(index_to_multiindex(n)) - c),
                1e-12 * std::abs(c));
    }
  }
}

TEST(Arithmetic, MultiplyBudget) {
  ArithmeticBudget tight;
  tight.max_terms = 10;
  const auto d = dir({{2, 1.0}, {3, 1.0}, {5, 1.0}, {7, 1.0}});
  EXPECT_THROW(multiply(d, d, tight), BudgetExceeded);
}

TEST(Arithmetic, Power) {
  const auto d = dir({{1, 1.0}, {2, 1.0}, {3, 1.0}});
  EXPECT_EQ(power(d, 0), SparseSeries::unit(Side::kDirichlet));
  EXPECT_EQ(power(d, 1), d);
  EXPECT_EQ(power(dir({{2, 1.0}}), 5), dir({{32, 1.0}}));
  EXPECT_EQ(power(d, 3), multiply(multiply(d, d), d));
}

TEST(Arithmetic, Combine) {
  const auto d = dir({{2, 1.0}, {3, 1.0}});
  const Complex one[] = {1.0};
  EXPECT_EQ(combine(d, one), d);
  const Complex square[] = {0.0, 1.0};
  EXPECT_EQ(combine(dir({{2, 1.0}}), square), dir({{4, 1.0}}));
  const Complex both[] = {1.0, 1.0};
  EXPECT_EQ(combine(d, both),
            dir({{2, 1.0}, {3, 1.0}, {4, 1.0}, {6, 2.0}, {9, 1.0}}));
  EXPECT_FALSE(combine(d, both).has_constant_term());
}

TEST(Homogeneity, Parts) {
  const auto d = dir({{1, 1.0}, {2, 1.0}, {6, 1.0}});
  EXPECT_EQ(homogeneous_part(d, 2), dir({{6, 1.0}}));
  EXPECT_TRUE(homogeneous_part(d, 7).empty());
  SparseSeries sum;
  for (std::uint32_t m : omega_tilde(d)) sum = add(sum, homogeneous_part(d, m));
  EXPECT_EQ(sum, d);
  EXPECT_TRUE(omega_tilde(SparseSeries()).empty());
}

TEST(Homogeneity, ProductOfParts) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto d = from_oracle(oracle::random_int_series(rng, 500, 20));
    const auto e = from_oracle(oracle::random_int_series(rng, 500, 20));
    const auto de = multiply(d, e);
    for (std::uint32_t r = 0; r <= 16; ++r) {
      SparseSeries expect;
      for (std::uint32_t i = 0; i <= r; ++i) {
        expect = add(expect, multiply(homogeneous_part(d, i), homogeneous_part(e, r - i)));
      }
      ASSERT_EQ(homogeneous_part(de, r), expect);
    }
  }
}

TEST(Homogeneity, DegreeRules) {
  EXPECT_EQ(omega_tilde(multiply(dir({{6, 1.0}}), dir({{10, 1.0}}))),
            std::vector<std::uint32_t>{4});
  const auto d2 = dir({{6, 1.0}, {35, 2.0}});
  const auto d5 = dir({{32, 1.0}, {2 * 3 * 5 * 7 * 11, 1.0}});
  const auto sum = omega_tilde(add(d2, d5));
  EXPECT_EQ(sum.front(), 2u);
  EXPECT_EQ(sum.back(), 5u);
}

TEST(PartialSums, Examples) {
  const auto d = dir({{1, 1.0}, {2, 1.0}});
  EXPECT_NEAR(partial_abs_sum(d, 0.25, 2), 1.0 + std::pow(2.0, -0.25), 1e-12);
  EXPECT_NEAR(partial_abs_sum(d, 0.25, 2), 1.840896, 1e-6);
  EXPECT_EQ(partial_abs_sum(dir({{5, 1.0}}), 0.3, 4), 0.0);
  const auto e = dir({{3, Complex(3, 4)}, {10, -2.0}});
  EXPECT_NEAR(partial_abs_sum(e, 0.0, BigInt(1) << 100), e.coefficient_sum(), 1e-12);
}

TEST(PartialSums, Monotone) {
  std::mt19937_64 rng(9);
  const auto d = from_oracle(oracle::random_int_series(rng, 5000, 200));
  double prev = 0.0;
  for (std::uint64_t n = 1; n <= 5000; n += 37) {
    const double a = partial_abs_sum(d, 0.3, n);
    ASSERT_GE(a, prev);
    ASSERT_LE(partial_abs_sum(d, 0.4, n), a);
    prev = a;
  }
}

TEST(PartialSums, HugeIndices) {
  // n = p_2000^40 has ~ 560 bits; compare against a 50-digit direct value.
  const auto alpha = MultiIndex::from_pairs({{2000, 40}});
  const auto d = SparseSeries::monomial(Side::kDirichlet, alpha, 1.0);
  const double expect =
      std::exp(-0.5 * 40.0 * std::log(static_cast<double>(nth_prime(2000))));
  const BigInt n = multiindex_to_index(alpha);
  EXPECT_NEAR(partial_abs_sum(d, 0.5, n) / expect, 1.0, 1e-12);
  EXPECT_EQ(partial_abs_sum(d, 0.5, n - 1), 0.0);
}

TEST(Hilbert, NormAndInner) {
  EXPECT_NEAR(h2_norm(dir({{1, 3.0}, {5, 4.0}})), 5.0, 1e-15);
  EXPECT_EQ(h2_inner(dir({{2, 1.0}}), dir({{3, 1.0}})), Complex(0.0));
  std::mt19937_64 rng(13);
  const auto d = from_oracle(oracle::random_int_series(rng, 500, 30));
  const auto e = from_oracle(oracle::random_int_series(rng, 500, 30));
  EXPECT_EQ(h2_inner(d, e), std::conj(h2_inner(e, d)));
  EXPECT_NEAR(h2_norm(d) * h2_norm(d), h2_inner(d, d).real(), 1e-12 * h2_inner(d, d).real());
}

TEST(Hilbert, Pythagoras) {
  const auto d = dir({{2, 1.0}, {9, Complex(0, 2)}});
  const auto e = dir({{3, 5.0}, {7, -1.0}});
  const double lhs = std::pow(h2_norm(add(d, e)), 2);
  EXPECT_NEAR(lhs, std::pow(h2_norm(d), 2) + std::pow(h2_norm(e), 2), 1e-12 * lhs);
}

TEST(Evaluate, Examples) {
  EXPECT_NEAR(std::abs(evaluate_dirichlet(dir({{2, 1.0}}), 1.0) - 0.5), 0.0, 1e-15);
  const auto p = add(SparseSeries::unit(Side::kPower),
                     SparseSeries::monomial(Side::kPower, MultiIndex::unit(1), 2.0));
  PolyPoint zero;
  zero.set(1, 0.0);
  EXPECT_EQ(evaluate_power(p, zero), Complex(1.0));
  const auto d = dir({{1, 1.0}, {2, 1.0}});
  for (double t : {3.0, 1.0, 0.1, 0.0}) {
    EXPECT_LE(std::abs(evaluate_dirichlet(d, Complex(0, t))), 2.0 + 1e-15);
  }
  EXPECT_NEAR(std::abs(evaluate_dirichlet(d, 0.0)), 2.0, 1e-15);
  EXPECT_THROW(evaluate_dirichlet(d, Complex(-0.1, 0)), InvalidInput);
}

TEST(Evaluate, MissingCoordinateAndDisc) {
  const auto p = SparseSeries::monomial(Side::kPower, MultiIndex::unit(3), 1.0);
  PolyPoint z;
  z.set(1, 0.5);
  EXPECT_THROW(evaluate_power(p, z), InvalidInput);
  z.set(3, 1.5);
  EXPECT_THROW(evaluate_power(p, z), InvalidInput);
}

TEST(Evaluate, SidesAgree) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> re(0.0, 2.0), im(-20.0, 20.0);
  for (int trial = 0; trial < 100; ++trial) {
    const auto d = from_oracle(oracle::random_int_series(rng, 500, 15));
    const Complex s(re(rng), im(rng));
    PolyPoint z;
    for (std::uint32_t pos : d.support_positions()) {
      z.set(pos, std::exp(-s * std::log(static_cast<double>(nth_prime(pos)))));
    }
    const Complex a = evaluate_dirichlet(d, s);
    const Complex b = evaluate_power(d.as(Side::kPower), z);
    ASSERT_LE(std::abs(a - b), 1e-10 * std::max(1.0, std::abs(a)));
  }
}

TEST(SupNorm, Sandwich) {
  const auto mono = SparseSeries::monomial(
      Side::kPower, MultiIndex::from_pairs({{1, 2}, {4, 1}}), Complex(3, -4));
  const auto est = sup_norm_estimate(mono);
  EXPECT_NEAR(est.lower, 5.0, 1e-12);
  EXPECT_NEAR(est.upper, 5.0, 1e-12);

  const auto p = add(SparseSeries::unit(Side::kPower),
                     SparseSeries::monomial(Side::kPower, MultiIndex::unit(1), 1.0));
  const auto e2 = sup_norm_estimate(p, {.samples = 200});
  EXPECT_NEAR(e2.lower, 2.0, 1e-9);
  EXPECT_EQ(e2.upper, 2.0);
  EXPECT_NEAR(std::abs(evaluate_power(p, e2.argmax)), e2.lower, 1e-15);
}

TEST(SupNorm, LowerBelowUpper) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto d = from_oracle(oracle::random_int_series(rng, 200, 12)).as(Side::kPower);
    const auto est = sup_norm_estimate(d, {.samples = 16, .seed = 5});
    ASSERT_LE(est.lower, est.upper);
    ASSERT_GT(est.lower, 0.0);
  }
}

TEST(Abscissa, Estimates) {
  const auto one = bohr_cahen_sigma_a(dir({{7, 5.0}}));
  EXPECT_EQ(one.sigma_a_bohr_cahen, 0.0);
  EXPECT_TRUE(one.truncation_caveat);

  SparseSeries ones;
  std::vector<Term> terms;
  for (std::uint64_t n = 1; n <= 100; ++n) terms.push_back({index_to_multiindex(n), 1.0});
  ones = SparseSeries::from_terms(Side::kDirichlet, terms);
  const auto est = bohr_cahen_sigma_a(ones);
  EXPECT_NEAR(est.sigma_a_bohr_cahen, 1.0, 0.05);
  for (std::size_t i = 1; i < est.table.size(); ++i) {
    EXPECT_GE(est.table[i].a_n, est.table[i - 1].a_n);
    EXPECT_GE(est.table[i].log10_n, est.table[i - 1].log10_n);
  }
  const auto with_lower = bohr_cahen_sigma_a(ones, DivergenceWitness{0.25, true});
  EXPECT_EQ(with_lower.sigma_a_lower, 0.25);
  EXPECT_TRUE(with_lower.consistent);
}

TEST(Theta, Support) {
  const Progression odd{3, 2};
  EXPECT_TRUE(is_theta_supported(SparseSeries(), odd));
  const auto p5 = SparseSeries::monomial(Side::kDirichlet, MultiIndex::unit(5), 1.0);
  EXPECT_TRUE(is_theta_supported(p5, odd));
  const auto p7 = SparseSeries::monomial(Side::kDirichlet, MultiIndex::unit(7, 2), 1.0);
  EXPECT_TRUE(is_theta_supported(multiply(p5, p7), odd));
  EXPECT_FALSE(is_theta_supported(dir({{2, 1.0}}), odd));
  EXPECT_TRUE(is_theta_supported(dir({{2, 1.0}}), ThetaSet(std::set<std::uint64_t>{1})));
}

TEST(SeriesIo, RoundTrip) {
  std::mt19937_64 rng(4);
  const auto d = from_oracle(oracle::random_int_series(rng, 500, 30));
  EXPECT_EQ(series_from_string(series_to_string(d)), d);
  EXPECT_EQ(series_to_string(series_from_string(series_to_string(d))), series_to_string(d));
  EXPECT_THROW(series_from_string(
                   R"({"side":"dirichlet","terms":[{"alpha":[[1,1]],"re":1,"im":0},)"
                   R"({"alpha":[[1,1]],"re":2,"im":0}]})"),
               InvalidInput);
  const std::vector<GrowthRow> rows = {{1.5, 0.25, 3.0}, {2.0, 0.25, 4.5}};
  const auto parsed = parse_growth_csv(growth_csv(rows));
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[1].a_n, 4.5);
}

}  // namespace
}  // namespace bohrlab
