#include "bohrlab/harness/run_config.h"

#include <set>

#include "bohrlab/error.h"
#include "bohrlab/series/series_io.h"

namespace bohrlab {
namespace {

using nlohmann::json;

json theta_json(const Progression& t) { return {{"u", t.u}, {"v", t.v}}; }

Progression theta_from(const json& j, Progression fallback) {
  if (j.is_null()) return fallback;
  Progression t{j.value("u", fallback.u), j.value("v", fallback.v)};
  if (t.v == 0) throw InvalidInput("theta needs v >= 1");
  return t;
}

void reject_unknown(const json& j, const std::set<std::string>& allowed, const char* where) {
  if (!j.is_object()) throw InvalidInput(std::string(where) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (!allowed.count(key)) throw InvalidInput("unknown key '" + key + "' in " + where);
  }
}

json terms_json(const std::vector<std::pair<BigInt, Complex>>& terms) {
  json out = json::array();
  for (const auto& [n, c] : terms) out.push_back({n.str(), c.real(), c.imag()});
  return out;
}

std::vector<std::pair<BigInt, Complex>> terms_from(const json& j) {
  std::vector<std::pair<BigInt, Complex>> out;
  for (const auto& e : j) {
    BigInt n;
    const auto& head = e.at(0);
    if (head.is_string()) {
      try {
        n = BigInt(head.get<std::string>());
      } catch (const std::exception&) {
        throw InvalidInput("bad index " + head.dump());
      }
    } else {
      n = BigInt(head.get<std::uint64_t>());
    }
    if (n < 1) throw InvalidInput("Dirichlet indices start at 1");
    const double re = e.size() > 1 ? e.at(1).get<double>() : 0.0;
    const double im = e.size() > 2 ? e.at(2).get<double>() : 0.0;
    out.emplace_back(n, Complex(re, im));
  }
  return out;
}

}  // namespace

json RunConfig::to_json() const {
  json lambdas = json::array();
  for (const auto& l : embed.lambdas) lambdas.push_back(lambda_to_json(l));
  return {
      {"command", command},
      {"seed", seed},
      {"budgets", {{"max_terms", budgets.max_terms}, {"max_seconds", budgets.max_seconds}}},
      {"construct",
       {{"m", construct.m},
        {"p", construct.p},
        {"K", construct.K},
        {"epsilon", construct.epsilon},
        {"theta", theta_json(construct.theta)},
        {"sup_samples", construct.sup_samples}}},
      {"embed",
       {{"which", embed.which},
        {"M_max", embed.M_max},
        {"K", embed.K},
        {"slack", embed.slack},
        {"sup_samples", embed.sup_samples},
        {"count", embed.count},
        {"lambdas", lambdas},
        {"random_lambdas", embed.random_lambdas}}},
      {"perturb",
       {{"query", perturb.query.to_json()},
        {"epsilon", perturb.epsilon},
        {"theta", theta_json(perturb.theta)},
        {"d1", terms_json(perturb.d1)},
        {"samples", perturb.samples},
        {"d2_blocks", perturb.d2_blocks},
        {"disjointness_count", perturb.disjointness_count},
        {"disjointness_theta", theta_json(perturb.disjointness_theta)}}},
  };
}

RunConfig RunConfig::from_json(const json& j) {
  RunConfig c;
  try {
    reject_unknown(j, {"command", "seed", "budgets", "construct", "embed", "perturb"}, "config");
    c.command = j.value("command", std::string());
    c.seed = j.value("seed", c.seed);
    if (j.contains("budgets")) {
      const auto& b = j["budgets"];
      reject_unknown(b, {"max_terms", "max_seconds"}, "budgets");
      c.budgets.max_terms = b.value("max_terms", c.budgets.max_terms);
      c.budgets.max_seconds = b.value("max_seconds", c.budgets.max_seconds);
    }
    if (j.contains("construct")) {
      const auto& s = j["construct"];
      reject_unknown(s, {"m", "p", "K", "epsilon", "theta", "sup_samples"}, "construct");
      auto& t = c.construct;
      t.m = s.value("m", t.m);
      t.p = s.value("p", t.p);
      t.K = s.value("K", t.K);
      t.epsilon = s.value("epsilon", t.epsilon);
      t.theta = theta_from(s.value("theta", json()), t.theta);
      t.sup_samples = s.value("sup_samples", t.sup_samples);
    }
    if (j.contains("embed")) {
      const auto& s = j["embed"];
      reject_unknown(s, {"which", "M_max", "K", "slack", "sup_samples", "count", "lambdas",
                         "random_lambdas"},
                     "embed");
      auto& t = c.embed;
      t.which = s.value("which", t.which);
      t.M_max = s.value("M_max", t.M_max);
      t.K = s.value("K", t.K);
      t.slack = s.value("slack", t.slack);
      t.sup_samples = s.value("sup_samples", t.sup_samples);
      t.count = s.value("count", t.count);
      t.random_lambdas = s.value("random_lambdas", t.random_lambdas);
      if (s.contains("lambdas")) {
        for (const auto& l : s["lambdas"]) t.lambdas.push_back(lambda_from_json(l));
      }
      if (t.which != "l1" && t.which != "l2") throw InvalidInput("embed.which must be l1 or l2");
      if (t.count == 0) throw InvalidInput("embed.count must be >= 1");
      for (const auto& l : t.lambdas) {
        if (l.size() != t.count) throw InvalidInput("every lambda needs embed.count entries");
      }
    }
    if (j.contains("perturb")) {
      const auto& s = j["perturb"];
      reject_unknown(s, {"query", "epsilon", "theta", "d1", "samples", "d2_blocks",
                         "disjointness_count", "disjointness_theta"},
                     "perturb");
      auto& t = c.perturb;
      if (s.contains("query")) t.query = MembershipQuery::from_json(s["query"]);
      t.epsilon = s.value("epsilon", t.epsilon);
      t.theta = theta_from(s.value("theta", json()), t.theta);
      if (s.contains("d1")) t.d1 = terms_from(s["d1"]);
      t.samples = s.value("samples", t.samples);
      t.d2_blocks = s.value("d2_blocks", t.d2_blocks);
      t.disjointness_count = s.value("disjointness_count", t.disjointness_count);
      t.disjointness_theta = theta_from(s.value("disjointness_theta", json()),
                                        t.disjointness_theta);
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed config: ") + e.what());
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  const std::string text = read_text(path);
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput("config " + path.string() + " is not JSON: " + e.what());
  }
  return RunConfig::from_json(j);
}

}  // namespace bohrlab
