#include "bohrlab/algebra/membership.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "bohrlab/error.h"
#include "bohrlab/series/dirichlet.h"

namespace bohrlab {

std::uint32_t w_exponent(std::uint32_t k, std::uint32_t m, std::uint32_t r) {
  if (k < 1 || m < 2) throw InvalidInput("w_exponent needs k >= 1 and m >= 2");
  std::int64_t best = (static_cast<std::int64_t>(k) - 2) * (m + r);
  for (std::uint32_t i = 0; i + 1 <= k; ++i) {
    best = std::max<std::int64_t>(best, static_cast<std::int64_t>(r) * k + m * i);
  }
  return static_cast<std::uint32_t>(best + 1);
}

bool MembershipQuery::in_region(std::span<const Complex> lambda) const {
  if (lambda.size() != k) return false;
  constexpr double kSlack = 1e-12;
  for (const auto& l : lambda) {
    if (std::abs(l) > j * (1 + kSlack)) return false;
  }
  return std::abs(lambda.back()) >= (1.0 / j) * (1 - kSlack);
}

std::string MembershipQuery::region() const {
  return "{lambda in C^" + std::to_string(k) + " : |lambda|_inf <= " + std::to_string(j) +
         ", |lambda_" + std::to_string(k) + "| >= 1/" + std::to_string(j) + "}";
}

void MembershipQuery::validate() const {
  if (j < 1 || k < 1) throw InvalidInput("query needs j, k >= 1");
  if (m < 2) throw InvalidInput("query needs m >= 2");
  if (!(ell >= 0) || !std::isfinite(ell)) throw InvalidInput("query needs finite ell >= 0");
}

nlohmann::json MembershipQuery::to_json() const {
  return {{"j", j}, {"k", k}, {"ell", ell}, {"m", m}, {"delta_m", delta_m()}};
}

MembershipQuery MembershipQuery::from_json(const nlohmann::json& js) {
  MembershipQuery q;
  try {
    q.j = js.value("j", q.j);
    q.k = js.value("k", q.k);
    q.ell = js.value("ell", q.ell);
    q.m = js.value("m", q.m);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad query: ") + e.what());
  }
  q.validate();
  return q;
}

std::vector<std::vector<Complex>> sample_lambda_region(const MembershipQuery& query,
                                                       std::size_t count, std::uint64_t seed) {
  query.validate();
  const double j = query.j, lo = 1.0 / query.j;
  const std::size_t k = query.k;
  std::vector<std::vector<Complex>> out;
  auto push = [&](std::vector<Complex> l) {
    if (out.size() < count) out.push_back(std::move(l));
  };
  {
    std::vector<Complex> l(k, 0.0);
    l.back() = lo;
    push(l);
  }
  push(std::vector<Complex>(k, j));
  {
    std::vector<Complex> l(k, -j);
    l.back() = lo;
    push(l);
  }
  {
    std::vector<Complex> l(k, j);
    l.back() = Complex(0, lo);
    push(l);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double two_pi = 2 * std::numbers::pi;
  while (out.size() < count) {
    std::vector<Complex> l(k);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      const double rad = j * std::sqrt(unit(rng));
      l[i] = std::polar(rad, two_pi * unit(rng));
    }
    const double rad = lo + (j - lo) * unit(rng);
    l.back() = std::polar(rad, two_pi * unit(rng));
    out.push_back(std::move(l));
  }
  return out;
}

std::vector<SparseSeries> powers_of(const SparseSeries& d, std::uint32_t k,
                                    const ArithmeticBudget& budget) {
  std::vector<SparseSeries> out;
  if (k == 0) return out;
  out.push_back(d);
  for (std::uint32_t q = 2; q <= k; ++q) out.push_back(multiply(out.back(), d, budget));
  return out;
}

Certificate membership_witness(const SparseSeries& d, const MembershipQuery& query,
                               const std::vector<std::vector<Complex>>& lambda_samples,
                               const std::vector<BigInt>& schedule) {
  const auto powers = powers_of(d.as(Side::kDirichlet), query.k);
  return membership_witness_powers(powers, query, lambda_samples, schedule);
}

Certificate membership_witness_powers(std::span<const SparseSeries> powers,
                                      const MembershipQuery& query,
                                      const std::vector<std::vector<Complex>>& lambda_samples,
                                      const std::vector<BigInt>& schedule) {
  query.validate();
  if (powers.size() != query.k) throw InvalidInput("need the first k powers of D");
  Certificate cert;
  cert.kind = CertificateKind::kMembership;
  cert.rule = "membership";
  cert.columns = {"sample", "lambda_inf", "lambda_k_abs", "witness_N_log10", "A_at_witness",
                  "A_max"};
  cert.meta["ell"] = query.ell;
  cert.meta["query"] = query.to_json();
  cert.meta["region"] = query.region();
  cert.meta["schedule"] = schedule.empty() ? "support" : "explicit";
  std::vector<BigInt> sorted = schedule;
  std::sort(sorted.begin(), sorted.end());
  const double nan = std::nan("");
  nlohmann::json samples = nlohmann::json::array();
  for (std::size_t s = 0; s < lambda_samples.size(); ++s) {
    const auto& lambda = lambda_samples[s];
    if (lambda.size() != query.k) throw InvalidInput("lambda sample has wrong length");
    samples.push_back(lambda_to_json(lambda));
    double inf = 0;
    for (const auto& l : lambda) inf = std::max(inf, std::abs(l));
    const SparseSeries dl = combine_powers(powers, lambda);
    const AbsSumProfile profile(dl, query.delta_m());
    double wn = nan, aw = nan, amax = profile.total();
    if (sorted.empty()) {
      const auto entries = profile.index().entries();
      for (std::size_t i = 0; i < entries.size(); ++i) {
        if (profile.prefix(i + 1) > query.ell) {
          wn = entries[i].log_n / std::numbers::ln10;
          aw = profile.prefix(i + 1);
          break;
        }
      }
    } else {
      amax = profile.at(sorted.back());
      for (const auto& n : sorted) {
        const double a = profile.at(n);
        if (a > query.ell) {
          wn = log10_of(n);
          aw = a;
          break;
        }
      }
    }
    cert.add_row({static_cast<double>(s), inf, std::abs(lambda.back()), wn, aw, amax});
  }
  cert.meta["lambda_samples"] = samples;
  cert.tolerance = 0;
  finalize(cert);
  return cert;
}

nlohmann::json lambda_to_json(std::span<const Complex> lambda) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& l : lambda) out.push_back({l.real(), l.imag()});
  return out;
}

std::vector<Complex> lambda_from_json(const nlohmann::json& j) {
  std::vector<Complex> out;
  try {
    for (const auto& e : j) {
      if (e.is_number()) {
        out.emplace_back(e.get<double>(), 0.0);
      } else {
        out.emplace_back(e.at(0).get<double>(), e.at(1).get<double>());
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad lambda vector: ") + e.what());
  }
  return out;
}

}  // namespace bohrlab
