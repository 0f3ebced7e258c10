#include "bohrlab/construct/block_poly.h"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "bohrlab/construct/galois_field.h"
#include "bohrlab/error.h"
#include "bohrlab/series/dirichlet.h"
#include "bohrlab/series/index.h"
#include "bohrlab/series/series_io.h"

namespace bohrlab {

std::shared_ptr<const UnimodularPoly> cached_unimodular_poly(std::uint32_t p, std::uint32_t k,
                                                             std::uint32_t m) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>,
                  std::shared_ptr<const UnimodularPoly>>
      cache;
  const auto key = std::make_tuple(p, k, m);
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto made = std::make_shared<const UnimodularPoly>(
      make_unimodular_poly(p, k, m, default_budget().max_terms));
  std::lock_guard lock(mu);
  return cache.emplace(key, std::move(made)).first->second;
}

BlockPolynomial make_Qk(const BlockScheme& scheme, const ConstructionParams& params,
                        std::uint32_t k) {
  if (k < 1 || k > scheme.depth()) throw InvalidInput("block index out of range");
  if (scheme.m != params.m || scheme.p != params.p) {
    throw InvalidInput("scheme and parameters disagree on (m, p)");
  }
  const auto r = cached_unimodular_poly(params.p, k, params.m);
  if (r->coefficient_min < params.eta - 1e-9) {
    throw Error("R_k coefficient below the floor eta");
  }
  const auto& block = scheme.blocks[k - 1];
  const double kk = static_cast<double>(k);
  const double factor = 1.0 / (kk * kk) / r->norm_bound;

  std::vector<Term> terms;
  terms.reserve(r->poly.size());
  for (const auto& t : r->poly.terms()) {
    std::vector<IndexEntry> entries;
    for (const auto& e : t.alpha.entries()) {
      entries.push_back({static_cast<std::uint32_t>(block[e.position - 1]), e.exponent});
    }
    terms.push_back({MultiIndex::from_entries(entries), t.coeff * factor});
  }
  BlockPolynomial out;
  out.k = k;
  out.q = SparseSeries::from_terms(Side::kPower, std::move(terms));
  for (std::uint32_t j = 1; j <= block.size(); ++j) {
    out.witness.set(static_cast<std::uint32_t>(block[j - 1]), r->witness.at(j));
  }
  out.witness_value = std::abs(evaluate_power(out.q, out.witness));
  out.norm_bound = 1.0 / (kk * kk);
  out.coefficient_min = r->coefficient_min * factor;
  out.construction = r->construction;
  return out;
}

std::uint32_t effective_depth(std::uint32_t p, std::uint32_t m, std::uint32_t K,
                              std::size_t max_terms) {
  std::uint64_t total = 0, q = 1;
  std::uint32_t depth = 0;
  for (std::uint32_t k = 1; k <= K; ++k) {
    q *= p;
    const std::uint64_t c = homogeneous_count(q, m);
    if (c > max_terms || total + c > max_terms) break;
    total += c;
    depth = k;
  }
  return std::max<std::uint32_t>(depth, 1);
}

BlockPoly make_P(const BlockScheme& scheme, const ConstructionParams& params,
                 std::size_t max_terms) {
  params.validate();
  std::uint64_t total = 0, q = 1;
  for (std::uint32_t k = 1; k <= scheme.depth(); ++k) {
    q *= params.p;
    total += homogeneous_count(q, params.m);
  }
  if (total > max_terms) {
    throw BudgetExceeded("P needs " + std::to_string(total) + " terms, budget " +
                         std::to_string(max_terms));
  }
  BlockPoly out;
  std::vector<Term> terms;
  terms.reserve(total);
  for (std::uint32_t k = 1; k <= scheme.depth(); ++k) {
    BlockPolynomial qk = make_Qk(scheme, params, k);
    const Complex v = evaluate_power(qk.q, qk.witness);
    // Q_k(e^{i phi} z) = e^{i m phi} Q_k(z): turn the block value real positive.
    PolyPoint rotated = qk.witness;
    rotated.rotate(-std::arg(v) / params.m);
    out.witness.absorb(rotated);
    for (const auto& t : qk.q.terms()) terms.push_back(t);
    out.norm_bound += qk.norm_bound;
    out.blocks.push_back(std::move(qk));
  }
  out.p = SparseSeries::from_terms(Side::kPower, std::move(terms), true);
  out.witness_value = std::abs(evaluate_power(out.p, out.witness));
  return out;
}

Certificate certify_growth(const SparseSeries& P, const BlockScheme& scheme,
                           const ConstructionParams& params) {
  params.validate();
  if (scheme.m != params.m || scheme.p != params.p) {
    throw InvalidInput("scheme and parameters disagree on (m, p)");
  }
  const WeightSequence w(scheme, params);
  const std::size_t depth = scheme.depth();
  std::vector<double> block_sum(depth, 0.0), dirichlet_sum(depth, 0.0);
  const double r = params.dirichlet_exponent();
  auto& table = PrimeTable::global();
  table.ensure_count(scheme.max_position());
  for (const auto& t : P.terms()) {
    if (t.alpha.empty()) throw InvalidInput("P has a constant term");
    const std::uint32_t k = scheme.block_of(t.alpha.entries().front().position);
    if (k == 0) throw InvalidInput("P has a term outside the blocks");
    double wa = 1.0;
    for (const auto& e : t.alpha.entries()) {
      if (scheme.block_of(e.position) != k) throw InvalidInput("P has a term across blocks");
      wa *= std::pow(w.block_weight(k), e.exponent);
    }
    const double a = std::abs(t.coeff);
    block_sum[k - 1] += a * wa;
    const double ln_n = static_cast<double>(log_index(t.alpha, table));
    dirichlet_sum[k - 1] += a * std::exp(-r * ln_n);
  }
  const double c = table.pnt_constant(params.epsilon, scheme.max_position());
  const double kt = w.transfer_constant();
  const double transfer = std::pow(c, params.m * r) * std::pow(kt, params.m);
  double mfact = 1;
  for (std::uint32_t i = 2; i <= params.m; ++i) mfact *= i;

  Certificate cert;
  cert.kind = CertificateKind::kGrowth;
  cert.rule = "block_growth";
  cert.columns = {"k", "block_sum", "lower_bound", "dirichlet_sum", "transfer_floor"};
  cert.tolerance = 1e-9;
  for (std::size_t k = 1; k <= depth; ++k) {
    const double kk = static_cast<double>(k);
    const double lower = params.eta / mfact / (kk * kk) *
                         std::pow(params.geometric_base(), (params.m - 1) / 2.0 * kk);
    cert.add_row({kk, block_sum[k - 1], lower, dirichlet_sum[k - 1],
                  block_sum[k - 1] / transfer});
  }
  cert.meta = {
      {"params", params.to_json()},
      {"theta", {{"u", scheme.theta.u}, {"v", scheme.theta.v}}},
      {"geometric_base", params.geometric_base()},
      {"geometric_ratio", params.geometric_ratio()},
      {"ratio_check", params.m == 2},
      {"dirichlet_exponent", r},
      {"pnt_constant", c},
      {"transfer_constant", kt},
      {"weight_lp_sum", w.lp_sum()},
      {"weight_lp_limit", params.b / (1.0 - params.b)},
  };
  cert.inputs_digest = inputs_digest({{"params", params.to_json()},
                                      {"theta", {scheme.theta.u, scheme.theta.v}},
                                      {"depth", depth}});
  finalize(cert);
  return cert;
}

SparseSeries restrict_to_block(const SparseSeries& P, const BlockScheme& scheme,
                               std::uint32_t k) {
  std::vector<Term> kept;
  for (const auto& t : P.terms()) {
    if (!t.alpha.empty() && scheme.block_of(t.alpha.entries().front().position) == k) {
      kept.push_back(t);
    }
  }
  return SparseSeries::from_terms(P.side(), std::move(kept));
}

Certificate certify_norms(const SparseSeries& P, const BlockScheme& scheme,
                          std::span<const PolyPoint> block_witnesses, const PolyPoint& p_witness,
                          double safety_factor, const SupNormOptions& options) {
  if (block_witnesses.size() != scheme.depth()) {
    throw InvalidInput("need one witness per block");
  }
  Certificate cert;
  cert.kind = CertificateKind::kNormBound;
  cert.rule = "norm_bound";
  cert.columns = {"block", "lower", "upper", "bound"};
  cert.tolerance = 0.0;
  double truncated = 0;
  nlohmann::json witnesses = nlohmann::json::array();
  for (std::uint32_t k = 1; k <= scheme.depth(); ++k) {
    const SparseSeries q = restrict_to_block(P, scheme, k);
    const PolyPoint cand[] = {block_witnesses[k - 1]};
    const auto est = sup_norm_estimate(q, options, cand);
    const double bound = 1.0 / (double(k) * k);
    truncated += bound;
    cert.add_row({static_cast<double>(k), est.lower, est.upper, bound});
    witnesses.push_back(point_to_json(block_witnesses[k - 1]));
  }
  SupNormOptions big = options;
  big.refined_starts = std::min<std::size_t>(big.refined_starts, 2);
  const PolyPoint cand[] = {p_witness};
  const auto est = sup_norm_estimate(P, big, cand);
  cert.add_row({0.0, est.lower, est.upper, std::numbers::pi * std::numbers::pi / 6.0});
  const nlohmann::json sampler = {{"samples", options.samples},
                                  {"seed", options.seed},
                                  {"refined_starts", options.refined_starts},
                                  {"sweeps", options.sweeps},
                                  {"phase_grid", options.phase_grid}};
  cert.meta = {{"safety_factor", safety_factor},
               {"sampler", sampler},
               {"truncated_bound", truncated},
               {"theta", {{"u", scheme.theta.u}, {"v", scheme.theta.v}}},
               {"p", scheme.p},
               {"m", scheme.m},
               {"depth", scheme.depth()},
               {"block_witnesses", witnesses},
               {"p_witness", point_to_json(p_witness)}};
  cert.inputs_digest = inputs_digest({{"theta", {scheme.theta.u, scheme.theta.v}},
                                      {"p", scheme.p},
                                      {"m", scheme.m},
                                      {"depth", scheme.depth()},
                                      {"sampler", sampler}});
  finalize(cert);
  return cert;
}

Certificate certify_norms(const BlockPoly& bp, const BlockScheme& scheme,
                          const ConstructionParams& params, const SupNormOptions& options) {
  std::vector<PolyPoint> witnesses;
  for (const auto& b : bp.blocks) witnesses.push_back(b.witness);
  return certify_norms(bp.p, scheme, witnesses, bp.witness, params.safety_factor, options);
}

std::uint32_t default_prime_above(std::uint32_t M) {
  if (M < 5) return 5;
  std::uint32_t p = M + 1;
  while (!is_prime_u64(p)) ++p;
  return p;
}

Certificate dirichlet_growth_certificate(const SparseSeries& d, const BlockScheme& scheme,
                                         double sigma, double ell) {
  const AbsSumProfile profile(d, sigma);
  const auto& idx = profile.index();
  std::vector<std::size_t> last(scheme.depth(), std::numeric_limits<std::size_t>::max());
  for (std::size_t i = 0; i < idx.size(); ++i) {
    const auto& alpha = idx.entries()[i].term->alpha;
    const std::uint32_t k = alpha.empty() ? 0 : scheme.block_of(alpha.entries().front().position);
    if (k) last[k - 1] = i;
  }
  Certificate cert;
  cert.kind = CertificateKind::kGrowth;
  cert.rule = "strictly_increasing";
  cert.columns = {"N_log10", "A_N"};
  cert.tolerance = 0.0;
  double exceeds = std::nan("");
  for (std::size_t k = 0; k < last.size(); ++k) {
    if (last[k] == std::numeric_limits<std::size_t>::max()) continue;
    const BigInt n = idx.index_of(last[k]);
    const double a = profile.at(n);
    cert.add_row({log10_of(n), a});
    if (std::isnan(exceeds) && a > ell) exceeds = static_cast<double>(k + 1);
  }
  cert.meta = {{"sigma", sigma},
               {"ell", ell},
               {"first_block_exceeding_ell", std::isnan(exceeds) ? nlohmann::json(nullptr)
                                                                  : nlohmann::json(exceeds)}};
  finalize(cert);
  return cert;
}

DirichletConstruction make_Dkm(const Progression& theta, std::uint32_t m, std::uint32_t M,
                               Normalization norm, const DkmOptions& options) {
  if (m < 2 || M <= m) throw InvalidInput("need M > m >= 2");
  const std::uint32_t p = options.p ? options.p : default_prime_above(M);
  const std::uint32_t depth = effective_depth(p, M, options.K, options.max_terms);
  // P does not depend on epsilon; any valid value fills the parameter record.
  ConstructionParams params = ConstructionParams::solve(M, p, depth, 0.5);
  DirichletConstruction out;
  out.scheme = make_blocks(theta.u, theta.v, p, depth, M);
  out.depth = depth;
  const BlockPoly bp = make_P(out.scheme, params, options.max_terms);
  if (norm == Normalization::kH2) {
    out.norm_estimate = h2_norm(bp.p);
  } else {
    out.norm_estimate = bp.witness_value;
  }
  out.scale = 1.0 / out.norm_estimate;
  out.d = scale(out.scale, bp.p).as(Side::kDirichlet);
  out.witness = bp.witness;
  const double delta_m = (m - 1.0) / (2.0 * m);
  out.growth = dirichlet_growth_certificate(out.d, out.scheme, delta_m, options.ell);
  out.growth.meta["m"] = m;
  out.growth.meta["M"] = M;
  out.growth.meta["p"] = p;
  out.growth.meta["depth"] = depth;
  out.growth.meta["normalization"] = norm == Normalization::kH2 ? "h2" : "sup";
  out.growth.meta["scale"] = out.scale;
  out.growth.inputs_digest = inputs_digest({{"theta", {theta.u, theta.v}},
                                            {"m", m},
                                            {"M", M},
                                            {"p", p},
                                            {"depth", depth},
                                            {"norm", norm == Normalization::kH2 ? "h2" : "sup"}});
  return out;
}

std::vector<Progression> disjoint_theta_family(std::size_t count) {
  if (count == 0) throw InvalidInput("family size must be >= 1");
  std::vector<Progression> out;
  for (std::size_t r = 1; r <= count; ++r) out.push_back({r, count + 1});
  return out;
}

}  // namespace bohrlab
