#include "bohrlab/construct/embedding.h"

#include <cmath>

#include "bohrlab/error.h"
#include "bohrlab/series/series_io.h"

namespace bohrlab {
namespace {

nlohmann::json lambda_json(std::span<const Complex> lambda) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& l : lambda) out.push_back({l.real(), l.imag()});
  return out;
}

}  // namespace

L1Embedding::L1Embedding(std::size_t count, const EmbeddingOptions& options)
    : options_(options), count_(count) {
  if (options.M_max < 2) throw InvalidInput("l1 embedding needs M_max >= 2");
  if (count == 0) return;
  const std::uint32_t degrees = options.M_max - 1;
  const auto family = disjoint_theta_family(count * degrees);
  for (std::uint32_t k = 1; k <= count; ++k) {
    for (std::uint32_t m = 2; m <= options.M_max; ++m) {
      const Progression theta = family[(k - 1) * degrees + (m - 2)];
      const std::uint32_t p = default_prime_above(m);
      const std::uint32_t depth = effective_depth(p, m, options.K, options.max_terms);
      const auto params = ConstructionParams::solve(m, p, depth, 0.5);
      const auto scheme = make_blocks(theta.u, theta.v, p, depth, m);
      const BlockPoly bp = make_P(scheme, params, options.max_terms);
      const PolyPoint cand[] = {bp.witness};
      const auto est = sup_norm_estimate(
          bp.p,
          {.samples = options.samples, .seed = options.seed + k * 131 + m, .refined_starts = 0,
           .sweeps = 0},
          cand);
      Member mem;
      mem.k = k;
      mem.m = m;
      mem.theta = theta;
      mem.depth = depth;
      mem.lower = est.lower;
      // The chain-character R_k obeys ||R_k|| <= q^{(m+1)/2}, so
      // ||P|| <= sum 1/k^2; the triangle bound caps it as well.
      bool proven = true;
      for (const auto& b : bp.blocks) proven = proven && b.construction == "chain-character";
      const double theory = proven ? bp.norm_bound : params.safety_factor * bp.norm_bound;
      mem.upper = std::min(theory, est.upper);
      mem.normalized = scale(1.0 / est.lower, bp.p);
      mem.witness = est.argmax;
      if (std::abs(evaluate_power(bp.p, mem.witness) - Complex(est.lower)) >
          1e-9 * est.lower) {
        // argmax came from sampling: realign its phase so the value is positive.
        const Complex v = evaluate_power(bp.p, mem.witness);
        mem.witness.rotate(-std::arg(v) / m);
      }
      slack_ = std::max(slack_, mem.upper / mem.lower - 1.0);
      members_.push_back(std::move(mem));
    }
  }
}

L1Embedding::Result L1Embedding::apply(std::span<const Complex> lambda) const {
  if (lambda.size() > count_) throw InvalidInput("lambda longer than the embedding family");
  Result out;
  out.image = SparseSeries(Side::kDirichlet);
  const double geometric = 1.0 - std::pow(2.0, 1.0 - static_cast<double>(options_.M_max));
  double abs_sum = 0.0;
  for (const auto& l : lambda) abs_sum += std::abs(l);
  out.target = abs_sum * geometric;

  Certificate& cert = out.certificate;
  cert.kind = CertificateKind::kIsometryL1;
  cert.rule = "isometry_l1";
  cert.columns = {"lower", "upper", "target", "slack"};
  cert.tolerance = options_.slack;
  cert.inputs_digest = inputs_digest({{"lambda", lambda_json(lambda)},
                                      {"M_max", options_.M_max},
                                      {"K", options_.K},
                                      {"max_terms", options_.max_terms},
                                      {"seed", options_.seed},
                                      {"samples", options_.samples}});
  nlohmann::json norms = nlohmann::json::array();
  for (const auto& mem : members_) {
    if (mem.k <= lambda.size()) {
      norms.push_back({{"k", mem.k}, {"m", mem.m}, {"lower", mem.lower}, {"upper", mem.upper},
                       {"depth", mem.depth}, {"theta", {mem.theta.u, mem.theta.v}}});
    }
  }
  cert.meta = {{"M_max", options_.M_max},
               {"measured_slack", slack_},
               {"members", norms},
               {"lambda", lambda_json(lambda)}};

  if (abs_sum == 0.0) {
    cert.add_row({0.0, 0.0, 0.0, options_.slack});
    cert.meta["trivial"] = true;
    finalize(cert);
    return out;
  }

  std::vector<Complex> coeffs;
  std::vector<const SparseSeries*> parts;
  PolyPoint point;
  double upper = 0.0;
  for (const auto& mem : members_) {
    if (mem.k > lambda.size()) continue;
    const Complex lk = lambda[mem.k - 1];
    const double w = std::pow(2.0, -static_cast<double>(mem.m - 1));
    upper += std::abs(lk) * w * mem.upper / mem.lower;
    PolyPoint z = mem.witness;
    if (lk != Complex(0.0)) z.rotate(-std::arg(lk) / mem.m);
    point.absorb(z);
    coeffs.push_back(lk * w);
    parts.push_back(&mem.normalized);
  }
  const SparseSeries image = linear_combination(coeffs, parts);
  out.lower = std::abs(evaluate_power(image, point));
  out.witness = point;
  // Phase search only when the aligned witness falls short of the target.
  if (out.lower < out.target * (1 - 1e-12)) {
    const PolyPoint cand[] = {point};
    const auto est = sup_norm_estimate(
        image, {.samples = 4, .seed = options_.seed, .refined_starts = 1, .sweeps = 2,
                .phase_grid = 16},
        cand);
    if (est.lower > out.lower) {
      out.lower = est.lower;
      out.witness = est.argmax;
    }
  }
  out.upper = upper;
  out.image = image.as(Side::kDirichlet);
  cert.meta["witness"] = point_to_json(out.witness);
  cert.add_row({out.lower, out.upper, out.target, options_.slack});
  finalize(cert);
  return out;
}

L2Embedding::L2Embedding(std::size_t count, const EmbeddingOptions& options)
    : options_(options), count_(count) {
  if (options.M_max < 3) throw InvalidInput("l2 embedding needs M_max >= 3");
  if (count == 0) return;
  const std::uint32_t degrees = options.M_max - 2;
  const auto family = disjoint_theta_family(count * degrees);
  for (std::uint32_t k = 1; k <= count; ++k) {
    for (std::uint32_t m = 3; m <= options.M_max; ++m) {
      const Progression theta = family[(k - 1) * degrees + (m - 3)];
      DkmOptions dopt;
      dopt.K = options.K;
      dopt.max_terms = options.max_terms;
      members_.push_back({k, m, theta, make_Dkm(theta, m - 1, m, Normalization::kH2, dopt)});
    }
  }
}

L2Embedding::Result L2Embedding::apply(std::span<const Complex> lambda) const {
  if (lambda.size() > count_) throw InvalidInput("lambda longer than the embedding family");
  Result out;
  std::vector<Complex> coeffs;
  std::vector<const SparseSeries*> parts;
  double lambda_sq = 0.0;
  for (const auto& l : lambda) lambda_sq += std::norm(l);
  for (const auto& mem : members_) {
    if (mem.k > lambda.size()) continue;
    const Complex lk = lambda[mem.k - 1];
    const double w = std::pow(2.0, -(static_cast<double>(mem.m) - 2.0) / 2.0);
    coeffs.push_back(lk * w);
    parts.push_back(&mem.construction.d);
  }
  out.image = parts.empty() ? SparseSeries(Side::kDirichlet) : linear_combination(coeffs, parts);
  out.norm_sq = std::pow(h2_norm(out.image), 2);
  out.expected = lambda_sq * (1.0 - std::pow(2.0, -(static_cast<double>(options_.M_max) - 2.0)));
  Certificate& cert = out.isometry;
  cert.kind = CertificateKind::kIsometryL2;
  cert.rule = "isometry_l2";
  cert.columns = {"norm_sq", "expected"};
  cert.tolerance = 1e-10;
  cert.add_row({out.norm_sq, out.expected});
  cert.meta = {{"M_max", options_.M_max}, {"lambda", lambda_json(lambda)}};
  cert.inputs_digest = inputs_digest({{"lambda", lambda_json(lambda)},
                                      {"M_max", options_.M_max},
                                      {"K", options_.K},
                                      {"max_terms", options_.max_terms}});
  finalize(cert);
  return out;
}

Certificate L2Embedding::orthonormality() const {
  Certificate cert;
  cert.kind = CertificateKind::kOrthonormality;
  cert.rule = "orthonormality";
  cert.columns = {"i", "j", "value"};
  cert.tolerance = 1e-12;
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = i; j < members_.size(); ++j) {
      const auto& a = members_[i].construction.d;
      const auto& b = members_[j].construction.d;
      const double v = i == j ? h2_norm(a) : std::abs(h2_inner(a, b));
      cert.add_row({static_cast<double>(i), static_cast<double>(j), v});
    }
  }
  nlohmann::json names = nlohmann::json::array();
  for (const auto& m : members_) {
    names.push_back({{"k", m.k}, {"m", m.m}, {"theta", {m.theta.u, m.theta.v}},
                     {"depth", m.construction.depth}});
  }
  cert.meta = {{"members", names}};
  cert.inputs_digest = inputs_digest({{"count", count_},
                                      {"M_max", options_.M_max},
                                      {"K", options_.K},
                                      {"max_terms", options_.max_terms}});
  finalize(cert);
  return cert;
}

L1Embedding::Result embed_l1(std::span<const Complex> lambda, const EmbeddingOptions& options) {
  return L1Embedding(lambda.size(), options).apply(lambda);
}

L2Embedding::Result embed_l2(std::span<const Complex> lambda, const EmbeddingOptions& options) {
  return L2Embedding(lambda.size(), options).apply(lambda);
}

}  // namespace bohrlab
