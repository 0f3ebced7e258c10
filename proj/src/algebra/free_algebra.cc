#include "bohrlab/algebra/free_algebra.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <set>

#include "bohrlab/algebra/perturbation.h"
#include "bohrlab/error.h"
#include "bohrlab/series/dirichlet.h"

namespace bohrlab {
namespace {

void require_disjoint(std::span<const SparseSeries> gens) {
  std::set<std::uint32_t> seen;
  for (const auto& g : gens) {
    for (auto pos : g.support_positions()) {
      if (!seen.insert(pos).second) {
        throw InvalidInput("generators share prime position " + std::to_string(pos));
      }
    }
  }
}

Side side_of(std::span<const SparseSeries> gens) {
  return gens.empty() ? Side::kDirichlet : gens.front().side();
}

}  // namespace

MultiPoly::MultiPoly(std::size_t variables, std::vector<Monomial> terms) : variables_(variables) {
  std::map<std::vector<std::uint32_t>, Complex> merged;
  for (auto& t : terms) {
    if (t.exponents.size() != variables) {
      throw InvalidInput("monomial has " + std::to_string(t.exponents.size()) +
                         " exponents, expected " + std::to_string(variables));
    }
    merged[t.exponents] += t.coeff;
  }
  for (auto& [e, c] : merged) {
    if (c != Complex(0.0)) terms_.push_back({e, c});
  }
}

bool MultiPoly::has_constant_term() const {
  for (const auto& t : terms_) {
    if (std::all_of(t.exponents.begin(), t.exponents.end(), [](auto e) { return e == 0; })) {
      return true;
    }
  }
  return false;
}

int MultiPoly::last_variable() const {
  int last = -1;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] > 0) last = std::max(last, static_cast<int>(i));
    }
  }
  return last;
}

std::uint32_t MultiPoly::max_exponent(std::size_t var) const {
  std::uint32_t out = 0;
  for (const auto& t : terms_) out = std::max(out, t.exponents.at(var));
  return out;
}

Complex MultiPoly::evaluate(std::span<const Complex> z) const {
  if (z.size() < variables_) throw InvalidInput("too few values for polynomial");
  Complex sum = 0;
  for (const auto& t : terms_) {
    Complex v = t.coeff;
    for (std::size_t i = 0; i < variables_; ++i) {
      for (std::uint32_t e = 0; e < t.exponents[i]; ++e) v *= z[i];
    }
    sum += v;
  }
  return sum;
}

nlohmann::json MultiPoly::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& t : terms_) {
    out.push_back({{"exponents", t.exponents}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  }
  return out;
}

MultiPoly MultiPoly::from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw InvalidInput("polynomial must be a JSON list");
  std::vector<Monomial> terms;
  std::size_t vars = 0;
  bool first = true;
  try {
    for (const auto& e : j) {
      Monomial m;
      m.exponents = e.at("exponents").get<std::vector<std::uint32_t>>();
      m.coeff = Complex(e.value("re", 0.0), e.value("im", 0.0));
      if (first) vars = m.exponents.size(), first = false;
      terms.push_back(std::move(m));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed polynomial: ") + e.what());
  }
  return MultiPoly(vars, std::move(terms));
}

SparseSeries naive_eval(std::span<const SparseSeries> generators, const MultiPoly& q,
                        const ArithmeticBudget& budget) {
  if (q.variables() > generators.size()) throw InvalidInput("more variables than generators");
  const Side side = side_of(generators);
  std::vector<std::vector<SparseSeries>> pw(generators.size());
  auto power_of = [&](std::size_t i, std::uint32_t e) -> const SparseSeries& {
    auto& v = pw[i];
    if (v.empty()) v.push_back(SparseSeries::unit(side));
    while (v.size() <= e) v.push_back(multiply(v.back(), generators[i], budget));
    return v[e];
  };
  std::vector<SparseSeries> products;
  std::vector<Complex> coeffs;
  for (const auto& t : q.terms()) {
    SparseSeries prod = SparseSeries::unit(side);
    for (std::size_t i = 0; i < q.variables(); ++i) {
      if (t.exponents[i]) prod = multiply(prod, power_of(i, t.exponents[i]), budget);
    }
    products.push_back(std::move(prod));
    coeffs.push_back(t.coeff);
  }
  if (products.empty()) return SparseSeries(side);
  std::vector<const SparseSeries*> ptrs;
  for (const auto& p : products) ptrs.push_back(&p);
  return linear_combination(coeffs, ptrs);
}

FreeAlgebraResult free_algebra_eval(std::span<const SparseSeries> generators, const MultiPoly& q,
                                    const ArithmeticBudget& budget) {
  if (q.variables() != generators.size()) {
    throw InvalidInput("polynomial has " + std::to_string(q.variables()) + " variables for " +
                       std::to_string(generators.size()) + " generators");
  }
  if (q.has_constant_term()) throw InvalidInput("Q must not have a constant term");
  require_disjoint(generators);
  const Side side = side_of(generators);
  FreeAlgebraResult out;
  out.value = SparseSeries(side);
  const int last = q.last_variable();
  if (last < 0) return out;
  out.last = static_cast<std::size_t>(last);
  const std::uint32_t M = q.max_exponent(out.last);
  std::vector<std::vector<MultiPoly::Monomial>> split(M + 1);
  for (const auto& t : q.terms()) {
    MultiPoly::Monomial reduced{{t.exponents.begin(), t.exponents.begin() + last}, t.coeff};
    split[t.exponents[out.last]].push_back(std::move(reduced));
  }
  const auto head = generators.first(out.last);
  SparseSeries dpow = SparseSeries::unit(side);
  for (std::uint32_t m = 0; m <= M; ++m) {
    out.L_polys.emplace_back(out.last, split[m]);
    out.L.push_back(naive_eval(head, out.L_polys.back(), budget));
    if (m > 0) dpow = multiply(dpow, generators[out.last], budget);
    out.value = add(out.value, multiply(out.L.back(), dpow, budget));
  }
  return out;
}

std::optional<IndependenceWitness> independence_witness(std::span<const SparseSeries> generators,
                                                        const MultiPoly& q,
                                                        const IndependenceConfig& config) {
  if (q.variables() > generators.size()) throw InvalidInput("more variables than generators");
  require_disjoint(generators);
  std::vector<SparseSeries> power_side;
  for (const auto& g : generators) power_side.push_back(g.as(Side::kPower));
  std::mt19937_64 rng(config.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t s = 0; s < config.samples; ++s) {
    IndependenceWitness w;
    w.sample = s;
    for (const auto& g : power_side) {
      PolyPoint own;  // pi_l(w_l): coordinates on A_l only
      for (auto pos : g.support_positions()) {
        own.set(pos, std::polar(config.radius * std::sqrt(unit(rng)),
                                2 * std::numbers::pi * unit(rng)));
      }
      w.point.absorb(own);
    }
    for (const auto& g : power_side) w.values.push_back(evaluate_power(g, w.point));
    w.q_value = q.evaluate(w.values);
    if (std::abs(w.q_value) > config.threshold) return w;
  }
  return std::nullopt;
}

N0Split n0_split(std::span<const Complex> lambda, std::span<const SparseSeries> ds,
                 const SparseSeries& d_in, const ThetaSet& theta,
                 const ArithmeticBudget& budget) {
  if (lambda.empty() || lambda.size() != ds.size()) {
    throw InvalidInput("need one lambda per D_m");
  }
  const std::size_t N = ds.size() - 1;
  std::vector<SparseSeries> dm;
  for (std::size_t m = 0; m <= N; ++m) {
    if (!avoids_theta(ds[m], theta)) {
      throw InvalidInput("D_" + std::to_string(m) + " touches theta");
    }
    dm.push_back(ds[m].as(Side::kDirichlet));
  }
  const SparseSeries d = d_in.as(Side::kDirichlet);
  if (!is_theta_supported(d, theta)) throw InvalidInput("D is not supported on theta");
  if (lambda[N] == Complex(0.0) || dm[N].empty()) {
    throw InvalidInput("leading term lambda_N D_N is zero");
  }

  N0Split out;
  const IndexedSeries lead(dm[N]);
  out.n0 = lead.index_of(0);
  out.n0_alpha = lead.entries()[0].term->alpha;

  const SparseSeries one = SparseSeries::unit(Side::kDirichlet);
  std::vector<SparseSeries> dpow{one};
  for (std::size_t m = 1; m <= N; ++m) dpow.push_back(multiply(dpow.back(), d, budget));

  out.full = SparseSeries(Side::kDirichlet);
  out.tilde = SparseSeries(Side::kDirichlet);
  SparseSeries hat_poly(Side::kDirichlet);
  for (std::size_t m = 0; m <= N; ++m) {
    const IndexedSeries idx(dm[m]);
    const std::size_t below = idx.count_at_most(out.n0 - 1), upto = idx.count_at_most(out.n0);
    std::vector<Term> head, tail;
    for (std::size_t i = 0; i < idx.size(); ++i) {
      const Term& t = *idx.entries()[i].term;
      if (i < below) head.push_back(t);
      else if (i >= upto) tail.push_back(t);
    }
    const SparseSeries s = SparseSeries::from_terms(Side::kDirichlet, std::move(head));
    const SparseSeries t = SparseSeries::from_terms(Side::kDirichlet, std::move(tail));
    out.full = add(out.full, scale(lambda[m], multiply(dm[m], dpow[m], budget)));
    if (m < N) out.tilde = add(out.tilde, scale(lambda[m], multiply(s, dpow[m], budget)));
    out.tilde = add(out.tilde, scale(lambda[m], multiply(t, dpow[m], budget)));
    const Complex a = dm[m].coefficient(out.n0_alpha);
    if (a != Complex(0.0)) hat_poly = add(hat_poly, scale(lambda[m] * a, dpow[m]));
  }
  out.hat = shift(hat_poly, out.n0_alpha);

  termwise_equal(out.full, add(out.tilde, out.hat), 1e-12, &out.identity_violations);
  for (const auto& t : out.tilde.terms()) {
    const MultiIndex off = t.alpha.restricted([&](std::uint32_t p) { return !theta.contains(p); });
    if (off == out.n0_alpha) ++out.violations;
  }
  return out;
}

Combination random_combination(std::mt19937_64& rng, const Progression& theta) {
  std::uniform_int_distribution<int> small(-3, 3), expo(1, 2), count(1, 3), pos(1, 9);
  auto gaussian = [&]() {
    Complex c;
    do c = Complex(small(rng), small(rng));
    while (c == Complex(0.0));
    return c;
  };
  auto random_series = [&](bool on_theta, int terms, bool allow_constant) {
    std::vector<Term> out;
    for (int i = 0; i < terms; ++i) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
      const int len = allow_constant ? count(rng) - 1 : count(rng);
      std::set<std::uint32_t> used;
      for (int l = 0; l < len; ++l) {
        std::uint32_t p;
        if (on_theta) {
          p = static_cast<std::uint32_t>(theta.element(count(rng)));
        } else {
          do p = static_cast<std::uint32_t>(pos(rng));
          while (theta.contains(p));
        }
        if (used.insert(p).second) pairs.push_back({p, static_cast<std::uint32_t>(expo(rng))});
      }
      std::sort(pairs.begin(), pairs.end());
      out.push_back({MultiIndex::from_pairs(pairs), gaussian()});
    }
    return SparseSeries::from_terms(Side::kDirichlet, std::move(out));
  };
  Combination c;
  const int N = count(rng);
  do c.d = random_series(true, count(rng) + 1, false);
  while (c.d.empty());
  for (int m = 0; m <= N; ++m) {
    const int terms = m == N ? count(rng) : count(rng) - 1;
    SparseSeries s = random_series(false, terms, true);
    while (m == N && s.empty()) s = random_series(false, terms, true);
    c.ds.push_back(std::move(s));
    c.lambda.push_back(m == N ? gaussian() : Complex(small(rng), small(rng)));
  }
  return c;
}

Certificate disjointness_certificate(std::size_t count, std::uint64_t seed,
                                     const Progression& theta) {
  Certificate cert;
  cert.kind = CertificateKind::kDisjointness;
  cert.rule = "zero_violations";
  cert.columns = {"combination", "n0_log10", "tilde_terms", "hat_terms", "violations",
                  "identity_violations"};
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < count; ++i) {
    const Combination c = random_combination(rng, theta);
    const N0Split s = n0_split(c.lambda, c.ds, c.d, theta);
    cert.add_row({static_cast<double>(i), log10_of(s.n0), static_cast<double>(s.tilde.size()),
                  static_cast<double>(s.hat.size()), static_cast<double>(s.violations),
                  static_cast<double>(s.identity_violations)});
  }
  cert.meta["theta"] = theta.to_string();
  cert.meta["theta_uv"] = {{"u", theta.u}, {"v", theta.v}};
  cert.meta["seed"] = seed;
  cert.meta["count"] = count;
  cert.inputs_digest = inputs_digest({{"count", count}, {"seed", seed}, {"theta", {theta.u, theta.v}}});
  finalize(cert);
  return cert;
}

}  // namespace bohrlab
