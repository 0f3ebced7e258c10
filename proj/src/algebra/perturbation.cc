#include "bohrlab/algebra/perturbation.h"

#include <algorithm>
#include <cmath>

#include <boost/math/special_functions/binomial.hpp>

#include "bohrlab/construct/block_poly.h"
#include "bohrlab/construct/unimodular.h"
#include "bohrlab/error.h"
#include "bohrlab/series/dirichlet.h"

namespace bohrlab {
namespace {

double binom(std::uint32_t n, std::uint32_t k) {
  return boost::math::binomial_coefficient<double>(n, k);
}

// Size bound for D^k when D has `terms` terms: multisets of k terms.
double power_terms(double terms, std::uint32_t k) { return binom(static_cast<std::uint32_t>(terms) + k - 1, k); }

std::uint32_t pick_blocks(const PerturbationOptions& opt, std::size_t d1_terms, std::uint32_t p,
                          std::uint32_t degree, std::uint32_t k) {
  if (opt.d2_blocks) return opt.d2_blocks;
  std::uint32_t best = 1;
  double terms = 0;
  std::uint64_t block = 1;
  for (std::uint32_t K = 1; K <= opt.max_d2_blocks; ++K) {
    block *= p;
    terms += static_cast<double>(homogeneous_count(block, degree));
    if (terms > 1e7) break;
    // D^k and the pairwise products of homogeneous parts in the ledger.
    const double d_terms = terms + d1_terms + 1;
    if (std::max(power_terms(d_terms, k), d_terms * d_terms) > static_cast<double>(opt.max_terms)) {
      break;
    }
    best = K;
  }
  return best;
}

struct Ledger {
  Certificate cert;
  nlohmann::json names = nlohmann::json::object();

  void add(int id, const std::string& name, bool holds, double observed, double threshold) {
    names[std::to_string(id)] = name;
    cert.add_row({static_cast<double>(id), holds ? 1.0 : 0.0, observed, threshold});
  }
};

double max_degree(const SparseSeries& d) {
  const auto w = omega_tilde(d);
  return w.empty() ? -1.0 : static_cast<double>(w.back());
}
double min_degree(const SparseSeries& d) {
  const auto w = omega_tilde(d);
  return w.empty() ? -1.0 : static_cast<double>(w.front());
}
bool is_homogeneous_of(const SparseSeries& d, std::uint32_t degree) {
  const auto w = omega_tilde(d);
  return w.size() == 1 && w.front() == degree;
}

}  // namespace

bool termwise_equal(const SparseSeries& a, const SparseSeries& b, double tol,
                    std::size_t* mismatches) {
  std::size_t bad = 0;
  const auto ta = a.terms(), tb = b.terms();
  std::size_t i = 0, j = 0;
  while (i < ta.size() || j < tb.size()) {
    if (j == tb.size() || (i < ta.size() && ta[i].alpha < tb[j].alpha)) {
      ++bad, ++i;
    } else if (i == ta.size() || tb[j].alpha < ta[i].alpha) {
      ++bad, ++j;
    } else {
      const Complex x = ta[i].coeff, y = tb[j].coeff;
      if (std::abs(x - y) > tol * std::max(1.0, std::abs(x))) ++bad;
      ++i, ++j;
    }
  }
  if (mismatches) *mismatches = bad;
  return bad == 0;
}

Certificate homogeneity_ledger(const PerturbationResult& out, double tol) {
  const auto& query = out.query;
  const auto& theta = out.theta;
  const std::uint32_t k = query.k, m = query.m;
  const double epsilon = out.epsilon;
  const SparseSeries& d1 = out.D1;
  if (out.powers.size() != k) throw InvalidInput("perturbation result lacks the powers of D");
  const ArithmeticBudget& budget = default_budget();
  const SparseSeries one = SparseSeries::unit(Side::kDirichlet);
  const MultiIndex two_w = MultiIndex::unit(1, out.w);
  const SparseSeries shifted_d4 = shift(out.D4, two_w);

  Ledger ledger;
  ledger.cert.kind = CertificateKind::kHomogeneity;
  ledger.cert.rule = "all_hold";
  ledger.cert.columns = {"check", "holds", "observed", "threshold"};
  const double wk = double(out.w) * k, top = wk + out.d2_degree;
  std::size_t bad = 0;

  {
    // Rebuild from the components without reusing out.D.
    std::vector<Term> terms(d1.terms().begin(), d1.terms().end());
    for (const auto& t : out.D4.terms()) terms.push_back({t.alpha + two_w, t.coeff});
    termwise_equal(out.D, SparseSeries::from_terms(Side::kDirichlet, terms), tol, &bad);
  }
  ledger.add(1, "reconstruction D = D1 + 2^{-ws} D4", bad == 0, double(bad), 0);

  const SparseSeries lhs = power(add(one, scale(1.0 / k, out.D2)), k, budget);
  termwise_equal(lhs, add(add(one, out.D2), out.D3), tol, &bad);
  ledger.add(2, "newton (1+D2/k)^k = 1 + D2 + D3", bad == 0, double(bad), 0);

  if (k >= 2) {
    const double lo = min_degree(out.D3);
    ledger.add(3, "min Omega(D3) > m + r", lo > double(m + out.r_used), lo, m + out.r_used);
  } else {
    ledger.add(3, "D3 = 0 for k = 1", out.D3.empty(), double(out.D3.size()), 0);
  }
  ledger.add(4, "D2 in D_{m+r}", is_homogeneous_of(out.D2, out.d2_degree), max_degree(out.D2),
             out.d2_degree);

  double lower_max = -1;
  for (std::uint32_t q = 1; q < k; ++q) {
    const double mx = max_degree(out.powers[q - 1]);
    const double expect = double(q) * (out.w + out.d2_degree);
    ledger.add(5, "max Omega(D^q) = q(w+m+r), q = " + std::to_string(q),
               mx == expect && mx < top, mx, expect);
    lower_max = std::max(lower_max, mx);
  }
  if (k >= 2) {
    std::vector<Complex> ones(k - 1, 1.0);
    const SparseSeries low = combine_powers(std::span(out.powers).first(k - 1), ones);
    lower_max = std::max(lower_max, max_degree(low));
  }
  ledger.add(6, "max Omega(lambda_1 D + .. + lambda_{k-1} D^{k-1}) < wk+m+r", lower_max < top,
             lower_max, top);

  // The four parts of D^k.
  const auto d1_powers = powers_of(d1, k, budget);
  const auto s_powers = powers_of(shifted_d4, k, budget);
  SparseSeries t1(Side::kDirichlet);
  for (std::uint32_t i = 0; i < k; ++i) {
    const SparseSeries& a = d1_powers[k - i - 1];
    SparseSeries term = i == 0 ? a : multiply(a, s_powers[i - 1], budget);
    t1 = add(t1, scale(binom(k, i), term));
  }
  const double ek = std::pow(epsilon / 2, double(k));
  const MultiIndex two_wk = MultiIndex::unit(1, out.w * k);
  const SparseSeries t2 = SparseSeries::monomial(Side::kDirichlet, two_wk, ek);
  const SparseSeries t3 = scale(ek, shift(out.D2, two_wk));
  const SparseSeries t4 = scale(ek, shift(out.D3, two_wk));
  const double t1max = max_degree(t1);
  ledger.add(7, "max Omega(sum_{i<k} C(k,i) D1^{k-i}(2^{-ws}D4)^i) < wk", t1max < wk, t1max, wk);
  ledger.add(8, "(eps/2)^k 2^{-wks} in D_{wk}", is_homogeneous_of(t2, out.w * k), max_degree(t2),
             wk);
  ledger.add(9, "(eps/2)^k 2^{-wks} D2 in D_{wk+m+r}",
             is_homogeneous_of(t3, out.w * k + out.d2_degree), max_degree(t3), top);
  if (k >= 2) {
    const double lo = min_degree(t4);
    ledger.add(10, "min Omega((eps/2)^k 2^{-wks} D3) > wk+m+r", lo > top, lo, top);
  } else {
    ledger.add(10, "(eps/2)^k 2^{-wks} D3 = 0 for k = 1", t4.empty(), double(t4.size()), 0);
  }
  const SparseSeries& dk = out.powers.back();
  termwise_equal(dk, add(add(t1, t2), add(t3, t4)), tol, &bad);
  ledger.add(11, "D^k = sum of the four parts", bad == 0, double(bad), 0);
  termwise_equal(homogeneous_part(dk, out.w * k + out.d2_degree), t3, tol, &bad);
  ledger.add(12, "D_{wk+m+r} slot of D^k is (eps/2)^k 2^{-wks} D2", bad == 0, double(bad), 0);

  // Product and sum rules for Omega-tilde on the homogeneous parts of D.
  const auto degrees = omega_tilde(out.D);
  std::vector<SparseSeries> parts;
  for (auto g : degrees) parts.push_back(homogeneous_part(out.D, g));
  bool product_ok = true, min_ok = true, max_ok = true;
  double pairs = 0;
  for (std::size_t a = 0; a < parts.size(); ++a) {
    for (std::size_t b = a; b < parts.size(); ++b) {
      ++pairs;
      const auto ga = degrees[a], gb = degrees[b];
      product_ok &= is_homogeneous_of(multiply(parts[a], parts[b], budget), ga + gb);
      if (ga != gb) {
        const SparseSeries sum = add(parts[a], parts[b]);
        min_ok &= min_degree(sum) == std::min(ga, gb);
        max_ok &= max_degree(sum) == std::max(ga, gb);
      }
    }
  }
  ledger.add(13, "D_m D_n in D_{m+n}", product_ok, pairs, 0);
  ledger.add(14, "min Omega(D_m + D_n) = min{m,n}", min_ok, pairs, 0);
  ledger.add(15, "max Omega(D_m + D_n) = max{m,n}", max_ok, pairs, 0);
  ledger.add(16, "sup bound on |D - D1| below eps", out.distance_bound_sup < epsilon,
             out.distance_bound_sup, epsilon);

  ledger.cert.meta["checks"] = ledger.names;
  ledger.cert.meta["w"] = out.w;
  ledger.cert.meta["r"] = out.r;
  ledger.cert.meta["r_used"] = out.r_used;
  ledger.cert.meta["d2_degree"] = out.d2_degree;
  ledger.cert.meta["d2_blocks"] = out.d2_blocks;
  ledger.cert.meta["D_theta_supported"] = is_theta_supported(out.D, theta);
  ledger.cert.meta["distance_bound_sum"] = out.distance_bound_sum;
  ledger.cert.meta["distance_bound_sup"] = out.distance_bound_sup;
  ledger.cert.meta["d2_sup_lower"] = out.d2_sup_lower;
  ledger.cert.meta["d2_sup_upper"] = out.d2_sup_upper;
  ledger.cert.meta["d2_prime"] = out.d2_prime;
  ledger.cert.meta["epsilon"] = epsilon;
  ledger.cert.meta["query"] = query.to_json();
  ledger.cert.meta["theta"] = {{"u", theta.u}, {"v", theta.v}};
  const nlohmann::json params = {{"query", query.to_json()},
                                 {"epsilon", epsilon},
                                 {"theta", {theta.u, theta.v}},
                                 {"d2_blocks", out.d2_blocks},
                                 {"d1_terms", d1.size()}};
  ledger.cert.inputs_digest = inputs_digest(params);
  finalize(ledger.cert);
  return std::move(ledger.cert);
}

PerturbationResult density_perturbation(const SparseSeries& d1_in, double epsilon,
                                        const MembershipQuery& query, const Progression& theta,
                                        const PerturbationOptions& options) {
  query.validate();
  if (!(epsilon > 0) || !std::isfinite(epsilon)) throw InvalidInput("epsilon must be > 0");
  const SparseSeries d1 = d1_in.as(Side::kDirichlet);
  if (!is_theta_supported(d1, theta)) {
    throw InvalidInput("D1 is not supported on theta " + theta.to_string());
  }
  ArithmeticBudget budget = default_budget();
  budget.max_terms = std::min(budget.max_terms, options.max_terms);

  PerturbationResult out;
  out.query = query;
  out.theta = theta;
  out.epsilon = epsilon;
  out.D1 = d1;
  const std::uint32_t k = query.k, m = query.m;
  out.r = d1.empty() ? 0 : static_cast<std::uint32_t>(omega_tilde(d1).back());
  out.r_used = std::max<std::uint32_t>(out.r, 1);
  out.d2_degree = m + out.r_used;
  out.w = w_exponent(k, m, out.r_used);
  out.d2_prime = default_prime_above(out.d2_degree);

  DkmOptions dkm;
  dkm.p = out.d2_prime;
  dkm.K = pick_blocks(options, d1.size(), out.d2_prime, out.d2_degree, k);
  dkm.max_terms = options.max_terms;
  dkm.ell = query.ell;
  const DirichletConstruction c2 =
      make_Dkm(theta, m, out.d2_degree, Normalization::kSup, dkm);
  out.d2_blocks = c2.depth;
  out.D2 = scale(0.5, c2.d);
  // c2.d has sup >= 1 at its witness; the chain construction bounds the
  // unnormalised sup by sum 1/k^2.
  double bound = 0;
  for (std::uint32_t b = 1; b <= c2.depth; ++b) bound += 1.0 / (double(b) * b);
  out.d2_sup_lower = 0.5;
  out.d2_sup_upper = std::min(0.5 * bound / c2.norm_estimate, out.D2.coefficient_sum());

  const SparseSeries one = SparseSeries::unit(Side::kDirichlet);
  out.D4 = scale(epsilon / 2, add(one, scale(1.0 / k, out.D2)));
  const MultiIndex two_w = MultiIndex::unit(1, out.w);
  const SparseSeries shifted_d4 = shift(out.D4, two_w);
  out.D = add(d1, shifted_d4);
  out.distance_bound_sup = (epsilon / 2) * (1 + out.d2_sup_upper / k);
  out.distance_bound_sum = (epsilon / 2) * (1 + out.D2.coefficient_sum() / k);

  const auto d2_powers = powers_of(out.D2, k, budget);
  {
    std::vector<Complex> coeffs;
    std::vector<const SparseSeries*> parts;
    for (std::uint32_t l = 2; l <= k; ++l) {
      coeffs.push_back(binom(k, l) * std::pow(double(k), -double(l)));
      parts.push_back(&d2_powers[l - 1]);
    }
    out.D3 = parts.empty() ? SparseSeries(Side::kDirichlet) : linear_combination(coeffs, parts);
  }
  out.powers = powers_of(out.D, k, budget);

  out.homogeneity = homogeneity_ledger(out, options.tolerance);

  std::vector<Complex> extreme(k, 0.0);
  extreme.back() = 1.0 / query.j;
  out.witness_bounds = growth_certificate_inequality(out, extreme);
  return out;
}

Certificate growth_certificate_inequality(const PerturbationResult& result,
                                          std::span<const Complex> lambda, std::size_t sample) {
  const auto& q = result.query;
  if (lambda.size() != q.k) throw InvalidInput("lambda must have k entries");
  const double delta = q.delta_m();
  const SparseSeries dl = combine_powers(result.powers, lambda);
  const AbsSumProfile lhs(dl, delta), d2(result.D2, delta);
  const BigInt shift_n = BigInt(1) << (result.w * q.k);
  std::vector<BigInt> schedule;
  for (std::size_t i = 0; i < lhs.index().size(); ++i) schedule.push_back(lhs.index().index_of(i));
  for (std::size_t i = 0; i < d2.index().size(); ++i) {
    schedule.push_back(d2.index().index_of(i) * shift_n);
  }
  std::sort(schedule.begin(), schedule.end());
  schedule.erase(std::unique(schedule.begin(), schedule.end()), schedule.end());

  const double factor = std::pow(result.epsilon / 2, double(q.k)) *
                        std::pow(2.0, -double(result.w) * q.k * delta) * std::abs(lambda.back());
  Certificate cert;
  cert.kind = CertificateKind::kGrowth;
  cert.rule = "inequality";
  cert.tolerance = 1e-9;
  cert.columns = {"sample", "N_log10", "lhs", "rhs", "rhs_literal"};
  const double id = static_cast<double>(sample);
  for (const auto& n : schedule) {
    cert.add_row({id, log10_of(n), lhs.at(n), factor * d2.at(n / shift_n), factor * d2.at(n)});
  }
  cert.meta["lambda"] = lambda_to_json(lambda);
  cert.meta["factor"] = factor;
  cert.meta["w"] = result.w;
  cert.meta["k"] = q.k;
  cert.meta["delta_m"] = delta;
  cert.meta["epsilon"] = result.epsilon;
  cert.meta["rhs_final"] = factor * d2.total();
  cert.inputs_digest = result.homogeneity.inputs_digest;
  finalize(cert);
  return cert;
}

Certificate growth_certificate_samples(const PerturbationResult& result,
                                      const std::vector<std::vector<Complex>>& samples) {
  Certificate out;
  nlohmann::json lambdas = nlohmann::json::array();
  nlohmann::json factors = nlohmann::json::array();
  for (std::size_t i = 0; i < samples.size(); ++i) {
    Certificate one = growth_certificate_inequality(result, samples[i], i);
    if (i == 0) {
      out = one;
      out.rows.clear();
      out.meta.erase("lambda");
      out.meta.erase("factor");
      out.meta.erase("rhs_final");
    }
    for (auto& r : one.rows) out.rows.push_back(std::move(r));
    lambdas.push_back(one.meta["lambda"]);
    factors.push_back(one.meta["factor"]);
  }
  out.meta["lambda_samples"] = lambdas;
  out.meta["factors"] = factors;
  finalize(out);
  return out;
}

PerturbationResult perturbation_from_parts(const SparseSeries& D, const SparseSeries& D1,
                                           const SparseSeries& D2, const SparseSeries& D3,
                                           const SparseSeries& D4, const nlohmann::json& meta) {
  PerturbationResult r;
  try {
    r.D = D.as(Side::kDirichlet);
    r.D1 = D1.as(Side::kDirichlet);
    r.D2 = D2.as(Side::kDirichlet);
    r.D3 = D3.as(Side::kDirichlet);
    r.D4 = D4.as(Side::kDirichlet);
    r.query = MembershipQuery::from_json(meta.at("query"));
    r.epsilon = meta.at("epsilon").get<double>();
    r.w = meta.at("w").get<std::uint32_t>();
    r.r = meta.at("r").get<std::uint32_t>();
    r.r_used = meta.at("r_used").get<std::uint32_t>();
    r.d2_degree = meta.at("d2_degree").get<std::uint32_t>();
    r.d2_blocks = meta.at("d2_blocks").get<std::uint32_t>();
    r.d2_prime = meta.at("d2_prime").get<std::uint32_t>();
    r.theta = {meta.at("theta").at("u").get<std::uint64_t>(),
               meta.at("theta").at("v").get<std::uint64_t>()};
    r.d2_sup_lower = meta.at("d2_sup_lower").get<double>();
    r.d2_sup_upper = meta.at("d2_sup_upper").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("incomplete perturbation record: ") + e.what());
  }
  const std::uint32_t k = r.query.k;
  r.distance_bound_sup = (r.epsilon / 2) * (1 + r.d2_sup_upper / k);
  r.distance_bound_sum = (r.epsilon / 2) * (1 + r.D2.coefficient_sum() / k);
  r.powers = powers_of(r.D, k);
  r.homogeneity = homogeneity_ledger(r);
  std::vector<Complex> extreme(k, 0.0);
  extreme.back() = 1.0 / r.query.j;
  r.witness_bounds = growth_certificate_inequality(r, extreme);
  return r;
}

}  // namespace bohrlab
