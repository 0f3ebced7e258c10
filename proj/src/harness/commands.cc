#include "bohrlab/harness/commands.h"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>

#include "bohrlab/algebra/free_algebra.h"
#include "bohrlab/algebra/perturbation.h"
#include "bohrlab/construct/embedding.h"
#include "bohrlab/construct/block_poly.h"
#include "bohrlab/error.h"
#include "bohrlab/series/series_io.h"

namespace bohrlab {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

class Deadline {
 public:
  explicit Deadline(double seconds) : seconds_(seconds), start_(std::chrono::steady_clock::now()) {}
  void check(const char* stage) const {
    const double used =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (seconds_ > 0 && used > seconds_) {
      throw BudgetExceeded(std::string("time budget exceeded after ") + stage);
    }
  }

 private:
  double seconds_;
  std::chrono::steady_clock::time_point start_;
};

std::string numbered(const char* stem, std::size_t i) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%02zu.json", stem, i);
  return buf;
}

class Writer {
 public:
  explicit Writer(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }

  void series(const std::string& name, const SparseSeries& d) {
    write_series(dir_ / name, d);
  }
  void bundle(const std::string& name, const SeriesBundle& b) {
    std::string text = "{\"bundle\":{";
    bool first = true;
    for (const auto& [key, d] : b.series) {
      text += first ? "\n" : ",\n";
      text += json(key).dump() + ":";
      append_series_text(text, d);
      first = false;
    }
    text += "},\n\"meta\":" + b.meta.dump(1) + "}\n";
    write_text(dir_ / name, text);
  }
  void certificate(const std::string& name, const Certificate& c, const std::string& series) {
    write_text(dir_ / name, certificate_to_string(c));
    manifest_.push_back({{"certificate", name}, {"series", series}});
    verdicts_[name] = c.verdict ? "pass" : (c.inconclusive ? "inconclusive" : "fail");
    all_pass_ = all_pass_ && c.verdict;
  }
  void text(const std::string& name, const std::string& body) { write_text(dir_ / name, body); }

  CommandOutcome finish(const RunConfig& config, json details) {
    write_text(dir_ / "manifest.json", manifest_.dump(1) + "\n");
    CommandOutcome out;
    out.exit_code = all_pass_ ? kExitPass : kExitFail;
    out.summary = {{"command", config.command},
                   {"seed", config.seed},
                   {"config_digest", inputs_digest(config.to_json())},
                   {"verdicts", verdicts_},
                   {"exit_code", out.exit_code},
                   {"details", std::move(details)}};
    write_text(dir_ / "summary.json", out.summary.dump(1) + "\n");
    write_text(dir_ / "config.json", config.to_json().dump(1) + "\n");
    return out;
  }

 private:
  fs::path dir_;
  json manifest_ = json::array();
  json verdicts_ = json::object();
  bool all_pass_ = true;
};

std::vector<std::vector<Complex>> embed_lambdas(const RunConfig& config) {
  auto out = config.embed.lambdas;
  std::mt19937_64 rng(config.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (std::size_t i = 0; i < config.embed.random_lambdas; ++i) {
    std::vector<Complex> l(config.embed.count);
    for (auto& x : l) {
      const double re = gauss(rng);
      x = Complex(re, gauss(rng));
    }
    out.push_back(std::move(l));
  }
  return out;
}

Certificate with_rows(const Certificate& emitted, std::vector<std::vector<double>> rows) {
  Certificate c = emitted;
  c.rows = std::move(rows);
  finalize(c);
  return c;
}

Progression theta_of(const json& j) {
  return {j.at("u").get<std::uint64_t>(), j.at("v").get<std::uint64_t>()};
}

}  // namespace

void apply_budgets(const Budgets& budgets) {
  auto& b = default_budget();
  b = ArithmeticBudget::from_env();
  if (!std::getenv("BOHRLAB_MAX_TERMS")) b.max_terms = budgets.max_terms;
}

CommandOutcome cmd_construct(const RunConfig& config, const fs::path& out) {
  apply_budgets(config.budgets);
  const Deadline deadline(config.budgets.max_seconds);
  const auto& c = config.construct;
  const BlockScheme scheme = make_blocks(c.theta.u, c.theta.v, c.p, c.K, c.m);
  const ConstructionParams params = ConstructionParams::solve(c.m, c.p, c.K, c.epsilon);
  const BlockPoly bp = make_P(scheme, params);
  deadline.check("construction");
  const Certificate growth = certify_growth(bp.p, scheme, params);
  SupNormOptions sup;
  sup.samples = c.sup_samples;
  sup.seed = config.seed;
  const Certificate norms = certify_norms(bp, scheme, params, sup);
  deadline.check("certificates");

  Writer w(out);
  w.series("series.json", bp.p);
  w.certificate("growth.json", growth, "series.json");
  w.certificate("norms.json", norms, "series.json");
  w.text("growth.csv", rows_to_csv(growth.columns, growth.rows));
  return w.finish(config, {{"params", params.to_json()},
                           {"terms", bp.p.size()},
                           {"depth", scheme.depth()},
                           {"witness_value", bp.witness_value}});
}

CommandOutcome cmd_embed(const RunConfig& config, const fs::path& out) {
  apply_budgets(config.budgets);
  const Deadline deadline(config.budgets.max_seconds);
  const auto& e = config.embed;
  EmbeddingOptions opt;
  opt.M_max = e.M_max;
  opt.K = e.K;
  opt.max_terms = std::min(opt.max_terms, default_budget().max_terms);
  opt.slack = e.slack;
  opt.seed = config.seed;
  opt.samples = e.sup_samples;
  const auto lambdas = embed_lambdas(config);
  Writer w(out);
  json details = {{"which", e.which}, {"lambdas", lambdas.size()}};
  if (e.which == "l1") {
    const L1Embedding emb(e.count, opt);
    details["measured_slack"] = emb.measured_slack();
    deadline.check("l1 members");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const auto r = emb.apply(lambdas[i]);
      w.series(numbered("image", i), r.image);
      w.certificate(numbered("isometry", i), r.certificate, numbered("image", i));
      deadline.check("l1 image");
    }
  } else {
    const L2Embedding emb(e.count, opt);
    deadline.check("l2 members");
    SeriesBundle members;
    for (std::size_t i = 0; i < emb.members().size(); ++i) {
      members.series[numbered("member", i)] = emb.members()[i].construction.d;
    }
    w.bundle("members.json", members);
    w.certificate("orthonormality.json", emb.orthonormality(), "members.json");
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
      const auto r = emb.apply(lambdas[i]);
      w.series(numbered("image", i), r.image);
      w.certificate(numbered("isometry", i), r.isometry, numbered("image", i));
      deadline.check("l2 image");
    }
  }
  return w.finish(config, details);
}

CommandOutcome cmd_perturb(const RunConfig& config, const fs::path& out) {
  apply_budgets(config.budgets);
  const Deadline deadline(config.budgets.max_seconds);
  const auto& p = config.perturb;
  SparseSeries d1(Side::kDirichlet);
  for (const auto& [n, c] : p.d1) d1 = add(d1, SparseSeries::dirichlet_term(n, c));
  PerturbationOptions opt;
  opt.d2_blocks = p.d2_blocks;
  opt.max_terms = std::min(opt.max_terms, default_budget().max_terms);
  const PerturbationResult r = density_perturbation(d1, p.epsilon, p.query, p.theta, opt);
  deadline.check("perturbation");
  const auto samples = sample_lambda_region(p.query, p.samples, config.seed);
  const Certificate growth = growth_certificate_samples(r, samples);
  const Certificate membership = membership_witness_powers(r.powers, p.query, samples);
  deadline.check("growth and membership");

  Writer w(out);
  SeriesBundle bundle;
  bundle.series = {{"D", r.D}, {"D1", r.D1}, {"D2", r.D2}, {"D3", r.D3}, {"D4", r.D4}};
  bundle.meta = r.homogeneity.meta;
  w.bundle("perturbation.json", bundle);
  w.certificate("homogeneity.json", r.homogeneity, "perturbation.json");
  w.certificate("witness_bounds.json", r.witness_bounds, "perturbation.json");
  w.certificate("growth.json", growth, "perturbation.json");
  w.certificate("membership.json", membership, "perturbation.json");
  if (p.disjointness_count > 0) {
    w.certificate("disjointness.json",
                  disjointness_certificate(p.disjointness_count, config.seed, p.disjointness_theta),
                  "perturbation.json");
    deadline.check("disjointness");
  }
  double least = 1e300;
  for (const auto& row : membership.rows) least = std::min(least, row[membership.column("A_max")]);
  return w.finish(config, {{"w", r.w},
                           {"r", r.r},
                           {"d2_degree", r.d2_degree},
                           {"d2_blocks", r.d2_blocks},
                           {"terms_D", r.D.size()},
                           {"terms_Dk", r.powers.back().size()},
                           {"distance_bound_sup", r.distance_bound_sup},
                           {"distance_bound_sum", r.distance_bound_sum},
                           {"least_A_max", least},
                           {"ell", p.query.ell}});
}

const SparseSeries& SeriesBundle::get(const std::string& name) const {
  auto it = series.find(name);
  if (it == series.end()) throw InvalidInput("series file lacks '" + name + "'");
  return it->second;
}

const SparseSeries& SeriesBundle::single() const {
  if (series.size() != 1) throw InvalidInput("expected a single series");
  return series.begin()->second;
}

SeriesBundle read_bundle(const fs::path& path) {
  json j;
  try {
    j = json::parse(read_text(path));
  } catch (const json::exception& e) {
    throw InvalidInput(path.string() + " is not JSON: " + e.what());
  }
  SeriesBundle b;
  if (j.contains("bundle")) {
    for (const auto& [name, s] : j["bundle"].items()) b.series[name] = series_from_json(s);
    b.meta = j.value("meta", json::object());
  } else {
    b.series["series"] = series_from_json(j);
  }
  return b;
}

json bundle_to_json(const SeriesBundle& b) {
  json series = json::object();
  for (const auto& [name, s] : b.series) series[name] = series_to_json(s);
  return {{"bundle", series}, {"meta", b.meta}};
}

Certificate recompute_certificate(const Certificate& c, const SeriesBundle& bundle) {
  const auto& meta = c.meta;
  try {
    if (c.rule == "block_growth") {
      const auto params = ConstructionParams::from_json(meta.at("params"));
      const auto theta = theta_of(meta.at("theta"));
      const auto scheme = make_blocks(theta.u, theta.v, params.p, params.K, params.m);
      return certify_growth(bundle.single(), scheme, params);
    }
    if (c.rule == "norm_bound") {
      const auto theta = theta_of(meta.at("theta"));
      const auto scheme =
          make_blocks(theta.u, theta.v, meta.at("p").get<std::uint32_t>(),
                      meta.at("depth").get<std::uint32_t>(), meta.at("m").get<std::uint32_t>());
      std::vector<PolyPoint> witnesses;
      for (const auto& p : meta.at("block_witnesses")) witnesses.push_back(point_from_json(p));
      const auto& s = meta.at("sampler");
      SupNormOptions opt;
      opt.samples = s.at("samples").get<std::size_t>();
      opt.seed = s.at("seed").get<std::uint64_t>();
      opt.refined_starts = s.at("refined_starts").get<std::size_t>();
      opt.sweeps = s.at("sweeps").get<std::size_t>();
      opt.phase_grid = s.at("phase_grid").get<std::size_t>();
      return certify_norms(bundle.single(), scheme, witnesses,
                           point_from_json(meta.at("p_witness")),
                           meta.at("safety_factor").get<double>(), opt);
    }
    if (c.rule == "isometry_l1") {
      if (meta.value("trivial", false)) return with_rows(c, {{0.0, 0.0, 0.0, c.tolerance}});
      const auto lambda = lambda_from_json(meta.at("lambda"));
      const double M_max = meta.at("M_max").get<double>();
      double abs_sum = 0, upper = 0;
      for (const auto& l : lambda) abs_sum += std::abs(l);
      for (const auto& mem : meta.at("members")) {
        const auto k = mem.at("k").get<std::size_t>();
        const double m = mem.at("m").get<double>();
        upper += std::abs(lambda.at(k - 1)) * std::pow(2.0, -(m - 1)) *
                 mem.at("upper").get<double>() / mem.at("lower").get<double>();
      }
      const SparseSeries image = bundle.single().as(Side::kPower);
      const double lower = std::abs(evaluate_power(image, point_from_json(meta.at("witness"))));
      const double target = abs_sum * (1.0 - std::pow(2.0, 1.0 - M_max));
      return with_rows(c, {{lower, upper, target, c.tolerance}});
    }
    if (c.rule == "isometry_l2") {
      const auto lambda = lambda_from_json(meta.at("lambda"));
      const double M_max = meta.at("M_max").get<double>();
      double sq = 0;
      for (const auto& l : lambda) sq += std::norm(l);
      const double norm = h2_norm(bundle.single());
      return with_rows(c, {{norm * norm, sq * (1.0 - std::pow(2.0, -(M_max - 2.0)))}});
    }
    if (c.rule == "orthonormality") {
      std::vector<const SparseSeries*> members;
      for (const auto& [_, s] : bundle.series) members.push_back(&s);
      std::vector<std::vector<double>> rows;
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i; j < members.size(); ++j) {
          const double v =
              i == j ? h2_norm(*members[i]) : std::abs(h2_inner(*members[i], *members[j]));
          rows.push_back({double(i), double(j), v});
        }
      }
      return with_rows(c, std::move(rows));
    }
    if (c.kind == CertificateKind::kHomogeneity || c.rule == "inequality" ||
        c.rule == "membership") {
      const PerturbationResult r =
          perturbation_from_parts(bundle.get("D"), bundle.get("D1"), bundle.get("D2"),
                                  bundle.get("D3"), bundle.get("D4"), bundle.meta);
      if (c.kind == CertificateKind::kHomogeneity) return r.homogeneity;
      std::vector<std::vector<Complex>> samples;
      if (meta.contains("lambda_samples")) {
        for (const auto& l : meta.at("lambda_samples")) samples.push_back(lambda_from_json(l));
      } else {
        samples.push_back(lambda_from_json(meta.at("lambda")));
      }
      if (c.rule == "membership") {
        return membership_witness_powers(r.powers, MembershipQuery::from_json(meta.at("query")),
                                         samples);
      }
      if (!meta.contains("lambda_samples")) return growth_certificate_inequality(r, samples[0]);
      return growth_certificate_samples(r, samples);
    }
    if (c.rule == "zero_violations") {
      return disjointness_certificate(meta.at("count").get<std::size_t>(),
                                      meta.at("seed").get<std::uint64_t>(),
                                      theta_of(meta.at("theta_uv")));
    }
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("certificate meta incomplete: ") + e.what());
  }
  throw InvalidInput("cannot recompute certificates with rule " + c.rule);
}

VerifyOutcome cmd_verify(const fs::path& series, const fs::path& cert_path) {
  json j;
  try {
    j = json::parse(read_text(cert_path));
  } catch (const json::exception& e) {
    throw InvalidInput(cert_path.string() + " is not JSON: " + e.what());
  }
  const Certificate emitted = certificate_from_json(j);
  const SeriesBundle bundle = read_bundle(series);
  const Certificate again = recompute_certificate(emitted, bundle);
  VerifyOutcome out;
  out.verdict = again.verdict;
  if (again.columns != emitted.columns) {
    out.detail = "columns differ";
    return out;
  }
  if (!rows_match(emitted.rows, again.rows, kVerifyTolerance, &out.detail)) return out;
  if (evaluate_rule(emitted) != emitted.verdict) {
    out.detail = "stored verdict does not follow from the stored rows";
    return out;
  }
  if (again.verdict != emitted.verdict || again.inconclusive != emitted.inconclusive) {
    out.detail = "verdict differs after recomputation";
    return out;
  }
  out.match = true;
  return out;
}

VerifyOutcome verify_directory(const fs::path& dir) {
  json manifest;
  try {
    manifest = json::parse(read_text(dir / "manifest.json"));
  } catch (const json::exception& e) {
    throw InvalidInput("bad manifest: " + std::string(e.what()));
  }
  VerifyOutcome all;
  all.match = true;
  all.verdict = true;
  for (const auto& entry : manifest) {
    const std::string cert = entry.at("certificate"), series = entry.at("series");
    const VerifyOutcome one = cmd_verify(dir / series, dir / cert);
    all.verdict = all.verdict && one.verdict;
    if (!one.match) {
      all.match = false;
      all.detail += cert + ": " + one.detail + "\n";
    }
  }
  return all;
}

int run_guarded(const std::function<int()>& body, const fs::path& out, std::ostream& err) {
  auto report = [&](const char* type, const std::string& message, int code) {
    const json e = {{"error", {{"type", type}, {"message", message}}}, {"exit_code", code}};
    err << e.dump() << "\n";
    if (!out.empty()) {
      try {
        fs::create_directories(out);
        write_text(out / "error.json", e.dump(1) + "\n");
      } catch (const std::exception&) {
      }
    }
    return code;
  };
  try {
    return body();
  } catch (const BudgetExceeded& e) {
    return report("budget", e.what(), kExitBudget);
  } catch (const ResourceError& e) {
    return report("budget", e.what(), kExitBudget);
  } catch (const Error& e) {
    return report("invalid_input", e.what(), kExitInvalid);
  } catch (const fs::filesystem_error& e) {
    return report("io", e.what(), kExitInvalid);
  } catch (const std::exception& e) {
    return report("invalid_input", e.what(), kExitInvalid);
  }
}

}  // namespace bohrlab
