#include <cmath>
#include <numbers>
#include <random>
#include <set>

#include "gtest/gtest.h"

#include "bohrlab/construct/certificate.h"
#include "bohrlab/construct/embedding.h"
#include "bohrlab/construct/galois_field.h"
#include "bohrlab/construct/block_poly.h"
#include "bohrlab/construct/params.h"
#include "bohrlab/construct/unimodular.h"
#include "bohrlab/error.h"
#include "bohrlab/series/index.h"
#include "bohrlab/series/theta.h"

namespace bohrlab {
namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

TEST(Blocks, Examples) {
  const auto s1 = make_blocks(3, 2, 5, 1, 2);
  ASSERT_EQ(s1.depth(), 1u);
  EXPECT_EQ(s1.blocks[0], (std::vector<std::uint64_t>{5, 7, 9, 11, 13}));

  const auto s2 = make_blocks(3, 2, 5, 2, 2);
  ASSERT_EQ(s2.blocks[1].size(), 25u);
  EXPECT_EQ(s2.blocks[1].front(), 15u);
  EXPECT_EQ(s2.blocks[1].back(), 63u);
  for (std::size_t i = 0; i < 25; ++i) EXPECT_EQ(s2.blocks[1][i], 15 + 2 * i);
}

TEST(Blocks, DisjointInitialSegment) {
  for (auto [u, v] : {std::pair{0, 1}, {3, 2}, {1, 7}}) {
    const auto s = make_blocks(u, v, 3, 4, 2);
    const Progression theta{static_cast<std::uint64_t>(u), static_cast<std::uint64_t>(v)};
    std::uint64_t k = 1;
    for (std::uint32_t b = 0; b < s.depth(); ++b) {
      EXPECT_EQ(s.blocks[b].size(), static_cast<std::size_t>(std::pow(3, b + 1)));
      for (auto pos : s.blocks[b]) {
        EXPECT_EQ(pos, theta.element(k++));
        EXPECT_EQ(s.block_of(pos), b + 1);
      }
    }
  }
}

TEST(Blocks, Rejections) {
  EXPECT_THROW(make_blocks(0, 1, 2, 2, 2), InvalidInput);   // p <= m
  EXPECT_THROW(make_blocks(0, 1, 3, 2, 3), InvalidInput);
  EXPECT_THROW(make_blocks(0, 1, 6, 2, 2), InvalidInput);   // not prime
  EXPECT_THROW(make_blocks(0, 0, 5, 2, 2), InvalidInput);
  EXPECT_THROW(make_blocks(std::uint64_t{1} << 40, 1, 5, 1, 2), InvalidInput);
}

TEST(Field, Axioms) {
  for (auto [p, k] : {std::pair{5u, 2u}, {3u, 3u}, {7u, 1u}}) {
    const GaloisField f(p, k);
    const std::uint32_t q = f.order();
    for (std::uint32_t a = 1; a < q; ++a) {
      EXPECT_EQ(f.mul(a, f.inverse(a)), 1u);
    }
    for (std::uint32_t a = 0; a < q; a += 3) {
      for (std::uint32_t b = 0; b < q; b += 2) {
        EXPECT_EQ(f.trace(f.add(a, b)), (f.trace(a) + f.trace(b)) % p);
        EXPECT_EQ(f.mul(a, b), f.mul(b, a));
      }
    }
  }
}

TEST(Unimodular, SmallCaseMatchesCharacterSum) {
  // GF(3): variable j carries the integer j - 1 mod 3, the trace is the identity.
  const auto r = make_unimodular_poly(3, 1, 2);
  const Complex omega = std::polar(1.0, 2 * std::numbers::pi / 3);
  for (std::uint32_t i = 1; i <= 3; ++i) {
    for (std::uint32_t j = i; j <= 3; ++j) {
      const std::uint32_t e = ((i - 1) * (j - 1)) % 3;
      const Complex expected = (i == j ? 1.0 : 2.0) * std::pow(omega, e);
      const MultiIndex a = i == j ? MultiIndex::unit(i, 2) : MultiIndex::from_pairs({{i, 1}, {j, 1}});
      EXPECT_NEAR(std::abs(r.poly.coefficient(a) - expected), 0.0, 1e-12) << i << "," << j;
    }
  }
  EXPECT_NEAR(std::abs(r.poly.coefficient(MultiIndex::from_pairs({{1, 1}, {2, 1}}))), 2.0, 1e-12);
}

TEST(Unimodular, CoefficientCountAndFloor) {
  for (auto [p, k, m] : {std::tuple{3u, 1u, 2u}, {5u, 1u, 2u}, {5u, 2u, 2u}, {5u, 1u, 3u},
                         {3u, 2u, 2u}, {7u, 1u, 3u}}) {
    const auto r = make_unimodular_poly(p, k, m);
    const std::uint64_t q = static_cast<std::uint64_t>(std::pow(p, k));
    EXPECT_EQ(r.poly.size(), binomial(q + m - 1, m));
    EXPECT_EQ(omega_tilde(r.poly), std::vector<std::uint32_t>{m});
    const auto floor = unimodular_sum_floor(p, m);
    EXPECT_GT(floor.eta, 0.0);
    for (const auto& t : r.poly.terms()) EXPECT_GE(std::abs(t.coeff), floor.eta * (1 - 1e-9));
    EXPECT_LE(r.witness_value, r.norm_bound * (1 + 1e-9));
  }
}

TEST(Unimodular, GridSupBelowBound) {
  // |R| is invariant under z -> e^{it} z, so fix z_1 = 1 and scan the rest.
  const auto r = make_unimodular_poly(3, 1, 2);
  const int n = 240;
  double best = 0;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      PolyPoint z;
      z.set(1, 1.0);
      z.set(2, std::polar(1.0, 2 * std::numbers::pi * a / n));
      z.set(3, std::polar(1.0, 2 * std::numbers::pi * b / n));
      best = std::max(best, std::abs(evaluate_power(r.poly, z)));
    }
  }
  EXPECT_LE(best, std::pow(3.0, 1.5) * 1.05);
  const auto est = sup_norm_estimate(r.poly, {.samples = 256, .seed = 3});
  EXPECT_LE(est.lower, std::pow(3.0, 1.5) * 1.05);
}

TEST(Unimodular, ChainValueMatchesExpansion) {
  const auto r = make_unimodular_poly(5, 1, 3);
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> ph(0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<Complex> z(5);
    PolyPoint pt;
    for (std::uint32_t j = 0; j < 5; ++j) {
      z[j] = std::polar(1.0, ph(rng));
      pt.set(j + 1, z[j]);
    }
    EXPECT_NEAR(chain_value(5, 1, 3, z), std::abs(evaluate_power(r.poly, pt)), 1e-9);
  }
}

TEST(Params, SolveInvariants) {
  const auto p = ConstructionParams::solve(2, 5, 4, 0.5);
  EXPECT_NEAR(p.base_exponent() + p.epsilon, p.base_exponent() / (1 - p.delta), 1e-12);
  EXPECT_GT(p.geometric_base(), 1.0);
  EXPECT_GT(p.delta, 0.0);
  EXPECT_LT(p.delta, 1.0);
  EXPECT_GT(p.b, 0.0);
  EXPECT_LT(p.b, 1.0);
  const auto back = ConstructionParams::from_json(p.to_json());
  EXPECT_EQ(back.to_json(), p.to_json());
  EXPECT_THROW(ConstructionParams::solve(2, 2, 4, 0.5), InvalidInput);
  EXPECT_THROW(ConstructionParams::solve(2, 5, 4, -1), InvalidInput);
}

TEST(Weights, Examples) {
  const double delta = 0.2;
  const double b = 0.9;  // 5^{1/5} 0.9^{4/5} > 1
  ASSERT_GT(std::pow(5, delta) * std::pow(b, 1 - delta), 1.0);
  const auto params = ConstructionParams::with_delta(2, 5, 3, delta, b);
  const auto scheme = make_blocks(3, 2, 5, 3, 2);
  const WeightSequence w(scheme, params);
  EXPECT_NEAR(w.at(5), std::pow(b / 5, (1 - delta) / 4), 1e-15);
  EXPECT_EQ(w.at(4), 0.0);   // even, off theta
  EXPECT_EQ(w.at(3), 0.0);   // u itself is not in theta
  double geo = 0;
  for (int k = 1; k <= 3; ++k) geo += std::pow(b, k);
  EXPECT_NEAR(w.lp_sum(), geo, 1e-12 * geo);
  EXPECT_LT(w.lp_sum(), b / (1 - b));
  double prev = 1e300;
  for (const auto& blk : scheme.blocks) {
    for (auto pos : blk) {
      EXPECT_LE(w.at(pos), prev);
      prev = w.at(pos);
    }
  }
}

class SmallP : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    scheme_ = new BlockScheme(make_blocks(0, 1, 3, 3, 2));
    params_ = new ConstructionParams(ConstructionParams::solve(2, 3, 3, 0.5));
    bp_ = new BlockPoly(make_P(*scheme_, *params_));
  }
  static void TearDownTestSuite() {
    delete bp_;
    delete params_;
    delete scheme_;
  }
  static BlockScheme* scheme_;
  static ConstructionParams* params_;
  static BlockPoly* bp_;
};
BlockScheme* SmallP::scheme_ = nullptr;
ConstructionParams* SmallP::params_ = nullptr;
BlockPoly* SmallP::bp_ = nullptr;

TEST_F(SmallP, QkScalingAndSupport) {
  const auto q1 = make_Qk(*scheme_, *params_, 1);
  const auto n1 = scheme_->blocks[0][0], n2 = scheme_->blocks[0][1];
  const Complex c = q1.q.coefficient(MultiIndex::from_pairs(
      {{static_cast<std::uint32_t>(n1), 1}, {static_cast<std::uint32_t>(n2), 1}}));
  EXPECT_NEAR(std::abs(c), 2 * std::pow(3.0, -1.5), 1e-12);
  const auto r2 = make_unimodular_poly(3, 2, 2);
  for (std::uint32_t k = 1; k <= 3; ++k) {
    const auto qk = make_Qk(*scheme_, *params_, k);
    for (const auto& t : qk.q.terms()) {
      for (auto pos : t.alpha.support()) EXPECT_EQ(scheme_->block_of(pos), k);
    }
  }
  // k = 2: coefficient moduli are those of R_2 times 3^{-3}/4.
  const auto q2 = make_Qk(*scheme_, *params_, 2);
  std::multiset<long long> a, b;
  for (const auto& t : q2.q.terms()) a.insert(std::llround(std::abs(t.coeff) * 1e9));
  for (const auto& t : r2.poly.terms()) {
    b.insert(std::llround(std::abs(t.coeff) * std::pow(3.0, -3) / 4 * 1e9));
  }
  EXPECT_EQ(a, b);
}

TEST_F(SmallP, PolynomialShape) {
  const auto d = bp_->p.as(Side::kDirichlet);
  EXPECT_TRUE(is_theta_supported(d, Progression{0, 1}));
  EXPECT_EQ(omega_tilde(bp_->p), std::vector<std::uint32_t>{2});
  const double basel = 1 + 0.25 + 1.0 / 9;
  EXPECT_NEAR(bp_->norm_bound, basel, 1e-12);
  const auto est = sup_norm_estimate(bp_->p, {.samples = 64, .seed = 5});
  EXPECT_LE(est.lower, std::numbers::pi * std::numbers::pi / 6 * 1.05);
}

TEST_F(SmallP, NormsCertificate) {
  const auto cert = certify_norms(*bp_, *scheme_, *params_, {.samples = 32, .seed = 2});
  EXPECT_TRUE(cert.verdict);
  for (const auto& row : cert.rows) EXPECT_LE(row[cert.column("lower")], row[cert.column("upper")]);
}

TEST(Growth, DefaultParametersPass) {
  const auto params = ConstructionParams::solve(2, 5, 4, 0.5);
  const auto scheme = make_blocks(0, 1, 5, 4, 2);
  const auto bp = make_P(scheme, params);
  const auto cert = certify_growth(bp.p, scheme, params);
  ASSERT_EQ(cert.rows.size(), 4u);
  EXPECT_TRUE(cert.verdict);
  const auto bs = cert.column("block_sum"), lb = cert.column("lower_bound");
  for (const auto& r : cert.rows) EXPECT_GE(r[bs], r[lb]);
  // Cumulative lower bounds grow geometrically.
  const double g = params.geometric_ratio();
  for (std::size_t i = 1; i < 4; ++i) {
    const double k = i + 1.0;
    EXPECT_NEAR(k * k * cert.rows[i][lb] / (i * i * cert.rows[i - 1][lb]), g, 1e-9 * g);
  }
}

TEST(Growth, SingleBlock) {
  const auto params = ConstructionParams::solve(2, 5, 1, 0.5);
  const auto scheme = make_blocks(0, 1, 5, 1, 2);
  const auto bp = make_P(scheme, params);
  const auto cert = certify_growth(bp.p, scheme, params);
  EXPECT_EQ(cert.rows.size(), 1u);
  EXPECT_TRUE(cert.verdict);
}

TEST(Growth, MismatchRejected) {
  const auto params = ConstructionParams::solve(2, 5, 2, 0.5);
  const auto scheme = make_blocks(0, 1, 7, 2, 2);
  const auto bp = make_P(make_blocks(0, 1, 5, 2, 2), params);
  EXPECT_THROW(certify_growth(bp.p, scheme, params), InvalidInput);
}

TEST(Dkm, H2Normalised) {
  DkmOptions opt;
  opt.K = 3;
  const auto c = make_Dkm(Progression{0, 1}, 2, 3, Normalization::kH2, opt);
  EXPECT_NEAR(h2_norm(c.d), 1.0, 1e-12);
  EXPECT_EQ(omega_tilde(c.d), std::vector<std::uint32_t>{3});
  EXPECT_TRUE(c.growth.verdict);
  const auto a = c.growth.column("A_N");
  for (std::size_t i = 1; i < c.growth.rows.size(); ++i) {
    EXPECT_GT(c.growth.rows[i][a], c.growth.rows[i - 1][a]);
  }
}

TEST(Dkm, RejectsLowDegree) {
  EXPECT_THROW(make_Dkm(Progression{0, 1}, 3, 3, Normalization::kSup), InvalidInput);
}

TEST(ThetaFamily, Disjoint) {
  const auto two = disjoint_theta_family(2);
  ASSERT_EQ(two.size(), 2u);
  for (std::uint64_t x = 1; x < 1000; ++x) EXPECT_FALSE(two[0].contains(x) && two[1].contains(x));
  const auto twelve = disjoint_theta_family(12);
  ASSERT_EQ(twelve.size(), 12u);
  const std::uint64_t modulus = twelve[0].v;
  std::set<std::uint64_t> residues;
  for (const auto& t : twelve) {
    EXPECT_EQ(t.v, modulus);
    residues.insert(t.u % modulus);
  }
  EXPECT_EQ(residues.size(), 12u);
  EXPECT_EQ(residues.count(0), 0u);
}

TEST(EmbedL1, Examples) {
  EmbeddingOptions opt;
  const double geo = 1 - std::pow(2.0, 1.0 - opt.M_max);
  const L1Embedding emb(2, opt);

  const Complex e1[] = {1.0};
  const auto r1 = emb.apply(e1);
  EXPECT_LE(r1.upper, geo * (1 + opt.slack));
  EXPECT_TRUE(r1.certificate.verdict);

  const Complex zero[] = {0.0, 0.0};
  const auto r0 = emb.apply(zero);
  EXPECT_TRUE(r0.image.empty());
  EXPECT_EQ(r0.lower, 0.0);
  EXPECT_EQ(r0.upper, 0.0);
  EXPECT_TRUE(r0.certificate.verdict);

  const Complex li[] = {1.0, Complex(0, 1)};
  const auto r2 = emb.apply(li);
  EXPECT_GE(r2.lower, 0.9 * 2 * geo);
  EXPECT_LE(r2.lower, r2.upper * (1 + 1e-12));
  EXPECT_TRUE(r2.certificate.verdict);
}

TEST(EmbedL2, Examples) {
  EmbeddingOptions opt;
  const L2Embedding emb(2, opt);
  const Complex e1[] = {1.0};
  EXPECT_NEAR(emb.apply(e1).norm_sq, 0.75, 1e-10);

  const auto ortho = emb.orthonormality();
  EXPECT_TRUE(ortho.verdict);
  for (const auto& r : ortho.rows) {
    if (r[0] != r[1]) EXPECT_EQ(r[2], 0.0);
  }

  const Complex l[] = {0.6, 0.8};
  EXPECT_NEAR(emb.apply(l).norm_sq, 1 - std::pow(2.0, -2), 1e-10);

  EmbeddingOptions wide;
  wide.M_max = 6;
  wide.K = 1;
  const auto far = embed_l2(l, wide);
  EXPECT_NEAR(far.norm_sq, 1 - std::pow(2.0, -4), 1e-10);
  EXPECT_LT(std::abs(far.norm_sq - 1), std::abs(emb.apply(l).norm_sq - 1));
  EXPECT_TRUE(far.isometry.verdict);
}

TEST(CertificateRules, TamperedRowsFail) {
  const auto params = ConstructionParams::solve(2, 5, 2, 0.5);
  const auto scheme = make_blocks(0, 1, 5, 2, 2);
  const auto bp = make_P(scheme, params);
  auto cert = certify_growth(bp.p, scheme, params);
  ASSERT_TRUE(cert.verdict);
  cert.rows[1][cert.column("block_sum")] = 0.0;
  finalize(cert);
  EXPECT_FALSE(cert.verdict);
  const auto round = certificate_from_json(certificate_to_json(cert));
  EXPECT_EQ(round.rows, cert.rows);
  EXPECT_EQ(round.verdict, cert.verdict);
}

TEST(CertificateRules, DigestOrderIndependent) {
  EXPECT_EQ(inputs_digest({{"a", 1}, {"b", 2}}), inputs_digest({{"b", 2}, {"a", 1}}));
  EXPECT_NE(inputs_digest({{"a", 1}}), inputs_digest({{"a", 2}}));
}

}  // namespace
}  // namespace bohrlab
