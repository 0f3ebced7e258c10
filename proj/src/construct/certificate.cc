#include "bohrlab/construct/certificate.h"

#include <openssl/evp.h>

#include <cmath>
#include <cstdio>
#include <sstream>

#include "bohrlab/error.h"
#include "bohrlab/series/series_io.h"

namespace bohrlab {
namespace {

struct KindName {
  CertificateKind kind;
  std::string_view name;
};
constexpr KindName kKinds[] = {
    {CertificateKind::kGrowth, "growth"},
    {CertificateKind::kIsometryL1, "isometry_l1"},
    {CertificateKind::kIsometryL2, "isometry_l2"},
    {CertificateKind::kOrthonormality, "orthonormality"},
    {CertificateKind::kNormBound, "norm_bound"},
    {CertificateKind::kDisjointness, "disjointness"},
    {CertificateKind::kMembership, "membership"},
    {CertificateKind::kHomogeneity, "homogeneity"},
};

double meta_number(const Certificate& c, const char* key) {
  if (!c.meta.contains(key)) throw InvalidInput(std::string("certificate meta lacks ") + key);
  return c.meta.at(key).get<double>();
}

bool block_growth(const Certificate& c) {
  const auto bs = c.column("block_sum"), lb = c.column("lower_bound"),
             ds = c.column("dirichlet_sum"), tf = c.column("transfer_floor"),
             kc = c.column("k");
  const double g = meta_number(c, "geometric_ratio");
  const bool ratio_check = c.meta.value("ratio_check", false);
  const double tol = c.tolerance;
  if (!(g > 1.0) || c.rows.empty()) return false;
  for (std::size_t i = 0; i < c.rows.size(); ++i) {
    const auto& r = c.rows[i];
    if (!(r[bs] >= r[lb] * (1 - tol))) return false;           // floor
    if (!(r[bs] > 0.0) || !(r[ds] > 0.0)) return false;         // strict growth
    if (!(r[ds] >= r[tf] * (1 - tol))) return false;           // transfer
    if (i == 0) continue;
    const auto& prev = c.rows[i - 1];
    const double k = r[kc], k0 = prev[kc];
    const double envelope = (k * k * r[lb]) / (k0 * k0 * prev[lb]);
    const double gk = std::pow(g, k - k0);
    if (std::abs(envelope - gk) > tol * gk) return false;
    if (ratio_check) {
      const double rho = (k * k * r[bs]) / (k0 * k0 * prev[bs]);
      if (!(rho >= gk * (1 - tol))) return false;
    }
  }
  return true;
}

bool strictly_increasing(const Certificate& c) {
  const auto n = c.column("N_log10"), a = c.column("A_N");
  if (c.rows.empty()) return false;
  for (std::size_t i = 1; i < c.rows.size(); ++i) {
    if (!(c.rows[i][n] > c.rows[i - 1][n]) || !(c.rows[i][a] > c.rows[i - 1][a])) {
      return false;
    }
  }
  return true;
}

bool inequality(const Certificate& c) {
  const auto lhs = c.column("lhs"), rhs = c.column("rhs");
  for (const auto& r : c.rows) {
    if (!(r[lhs] >= r[rhs] * (1 - c.tolerance))) return false;
  }
  return true;
}

bool membership(const Certificate& c, bool* inconclusive) {
  const auto wn = c.column("witness_N_log10"), av = c.column("A_at_witness");
  const double ell = meta_number(c, "ell");
  bool all = !c.rows.empty();
  for (const auto& r : c.rows) {
    if (std::isnan(r[wn]) || !(r[av] > ell)) all = false;
  }
  if (inconclusive) *inconclusive = !all;
  return all;
}

bool norm_bound(const Certificate& c) {
  const auto lo = c.column("lower"), up = c.column("upper"), bd = c.column("bound");
  const double safety = meta_number(c, "safety_factor");
  for (const auto& r : c.rows) {
    if (!(r[lo] <= r[bd] * safety)) return false;
    if (!(r[lo] <= r[up] * (1 + 1e-12))) return false;
  }
  return !c.rows.empty();
}

bool isometry_l1(const Certificate& c) {
  const auto lo = c.column("lower"), up = c.column("upper"), tg = c.column("target"),
             sl = c.column("slack");
  for (const auto& r : c.rows) {
    if (!(r[lo] <= r[up] * (1 + 1e-9) + 1e-300)) return false;
    if (!(r[lo] >= r[tg] * (1 - r[sl]))) return false;
    if (!(r[up] <= r[tg] * (1 + r[sl]))) return false;
  }
  return !c.rows.empty();
}

bool isometry_l2(const Certificate& c) {
  const auto v = c.column("norm_sq"), e = c.column("expected");
  for (const auto& r : c.rows) {
    if (!(std::abs(r[v] - r[e]) <= c.tolerance * std::max(1.0, r[e]))) return false;
  }
  return !c.rows.empty();
}

bool orthonormality(const Certificate& c) {
  const auto i = c.column("i"), j = c.column("j"), v = c.column("value");
  for (const auto& r : c.rows) {
    if (r[i] == r[j]) {
      if (!(std::abs(r[v] - 1.0) <= c.tolerance)) return false;
    } else if (r[v] != 0.0) {
      return false;
    }
  }
  return !c.rows.empty();
}

// Every column named "violations" or "*_violations" must be zero.
bool all_zero(const Certificate& c, std::string_view suffix) {
  std::vector<std::size_t> cols;
  for (std::size_t i = 0; i < c.columns.size(); ++i) {
    const std::string_view name = c.columns[i];
    if (name.size() >= suffix.size() && name.substr(name.size() - suffix.size()) == suffix) {
      cols.push_back(i);
    }
  }
  if (cols.empty()) return false;
  for (const auto& r : c.rows) {
    for (auto v : cols) {
      if (r[v] != 0.0) return false;
    }
  }
  return !c.rows.empty();
}

bool all_hold(const Certificate& c) {
  const auto h = c.column("holds");
  for (const auto& r : c.rows) {
    if (r[h] != 1.0) return false;
  }
  return !c.rows.empty();
}

}  // namespace

std::string_view kind_name(CertificateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

CertificateKind parse_kind(std::string_view name) {
  for (const auto& k : kKinds) {
    if (k.name == name) return k.kind;
  }
  throw InvalidInput("unknown certificate kind " + std::string(name));
}

std::size_t Certificate::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw InvalidInput("certificate has no column " + std::string(name));
}

void Certificate::add_row(std::vector<double> row) {
  if (row.size() != columns.size()) throw InvalidInput("row width does not match columns");
  rows.push_back(std::move(row));
}

bool evaluate_rule(const Certificate& c, bool* inconclusive) {
  if (inconclusive) *inconclusive = false;
  for (const auto& r : c.rows) {
    if (r.size() != c.columns.size()) return false;
  }
  // Degenerate but valid inputs (lambda = 0) are marked trivially passing.
  if (c.meta.value("trivial", false)) return true;
  if (c.rule == "block_growth") return block_growth(c);
  if (c.rule == "strictly_increasing") return strictly_increasing(c);
  if (c.rule == "inequality") return inequality(c);
  if (c.rule == "membership") return membership(c, inconclusive);
  if (c.rule == "norm_bound") return norm_bound(c);
  if (c.rule == "isometry_l1") return isometry_l1(c);
  if (c.rule == "isometry_l2") return isometry_l2(c);
  if (c.rule == "orthonormality") return orthonormality(c);
  if (c.rule == "zero_violations") return all_zero(c, "violations");
  if (c.rule == "all_hold") return all_hold(c);
  throw InvalidInput("unknown certificate rule " + c.rule);
}

void finalize(Certificate& cert) {
  bool inconclusive = false;
  cert.verdict = evaluate_rule(cert, &inconclusive);
  cert.inconclusive = inconclusive;
}

std::string rows_to_csv(const std::vector<std::string>& columns,
                        const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) out += ',';
      out += format_double(r[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<std::vector<double>> rows_from_csv(const std::string& csv,
                                               std::vector<std::string>* columns) {
  std::istringstream in(csv);
  std::string line;
  std::vector<std::string> cols;
  if (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cols.push_back(cell);
  }
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      if (cell == "nan") {
        row.push_back(std::nan(""));
      } else {
        char* end = nullptr;
        const double v = std::strtod(cell.c_str(), &end);
        if (end == cell.c_str() || *end != '\0') throw InvalidInput("bad CSV cell " + cell);
        row.push_back(v);
      }
    }
    if (row.size() != cols.size()) throw InvalidInput("CSV row width mismatch");
    rows.push_back(std::move(row));
  }
  if (columns) *columns = std::move(cols);
  return rows;
}

nlohmann::json certificate_to_json(const Certificate& c) {
  return {
      {"kind", std::string(kind_name(c.kind))},
      {"rule", c.rule},
      {"inputs_digest", c.inputs_digest},
      {"tolerance", c.tolerance},
      {"rows_csv", rows_to_csv(c.columns, c.rows)},
      {"meta", c.meta},
      {"verdict", c.verdict ? "pass" : "fail"},
      {"inconclusive", c.inconclusive},
  };
}

Certificate certificate_from_json(const nlohmann::json& j) {
  try {
    Certificate c;
    c.kind = parse_kind(j.at("kind").get<std::string>());
    c.rule = j.at("rule").get<std::string>();
    c.inputs_digest = j.at("inputs_digest").get<std::string>();
    c.tolerance = j.at("tolerance").get<double>();
    c.rows = rows_from_csv(j.at("rows_csv").get<std::string>(), &c.columns);
    c.meta = j.at("meta");
    c.verdict = j.at("verdict").get<std::string>() == "pass";
    c.inconclusive = j.value("inconclusive", false);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed certificate JSON: ") + e.what());
  }
}

std::string certificate_to_string(const Certificate& cert) {
  return certificate_to_json(cert).dump(1) + "\n";
}

std::string inputs_digest(const nlohmann::json& params) {
  const std::string text = params.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

bool rows_match(const std::vector<std::vector<double>>& a,
                const std::vector<std::vector<double>>& b, double rel_tol,
                std::string* detail) {
  if (a.size() != b.size()) {
    if (detail) *detail = "row count " + std::to_string(a.size()) + " vs " + std::to_string(b.size());
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) {
      if (detail) *detail = "row " + std::to_string(i) + " width differs";
      return false;
    }
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      const double x = a[i][j], y = b[i][j];
      if (std::isnan(x) || std::isnan(y)) {
        if (std::isnan(x) != std::isnan(y)) {
          if (detail) *detail = "row " + std::to_string(i) + " col " + std::to_string(j) + " NaN mismatch";
          return false;
        }
        continue;
      }
      if (std::abs(x - y) > rel_tol * std::max({std::abs(x), std::abs(y), 1e-300})) {
        if (detail) {
          *detail = "row " + std::to_string(i) + " col " + std::to_string(j) + ": " +
                    format_double(x) + " vs " + format_double(y);
        }
        return false;
      }
    }
  }
  return true;
}

}  // namespace bohrlab
