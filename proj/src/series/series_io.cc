#include "bohrlab/series/series_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "bohrlab/error.h"

namespace bohrlab {

nlohmann::json series_to_json(const SparseSeries& d) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : d.terms()) {
    nlohmann::json alpha = nlohmann::json::array();
    for (const auto& e : t.alpha.entries()) alpha.push_back({e.position, e.exponent});
    terms.push_back({{"alpha", alpha}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}});
  }
  return {{"side", std::string(side_name(d.side()))}, {"terms", terms}};
}

SparseSeries series_from_json(const nlohmann::json& j) {
  try {
    const Side side = parse_side(j.at("side").get<std::string>());
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> pairs;
      for (const auto& e : t.at("alpha")) {
        if (!e.is_array() || e.size() != 2) {
          throw InvalidInput("alpha entries must be [position, exponent]");
        }
        pairs.emplace_back(e[0].get<std::uint32_t>(), e[1].get<std::uint32_t>());
      }
      terms.push_back({MultiIndex::from_pairs(pairs),
                       Complex(t.at("re").get<double>(), t.at("im").get<double>())});
    }
    return SparseSeries::from_terms(side, std::move(terms), /*reject_duplicates=*/true);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed series JSON: ") + e.what());
  }
}

void append_series_text(std::string& out, const SparseSeries& d) {
  out += "{\"side\":\"";
  out += side_name(d.side());
  out += "\",\"terms\":[";
  bool first = true;
  for (const auto& t : d.terms()) {
    nlohmann::json alpha = nlohmann::json::array();
    for (const auto& e : t.alpha.entries()) alpha.push_back({e.position, e.exponent});
    const nlohmann::json term = {{"alpha", alpha}, {"re", t.coeff.real()}, {"im", t.coeff.imag()}};
    out += first ? "\n" : ",\n";
    out += term.dump();
    first = false;
  }
  out += "\n]}";
}

std::string series_to_string(const SparseSeries& d) {
  std::string out;
  append_series_text(out, d);
  return out + "\n";
}

SparseSeries series_from_string(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("series JSON does not parse: ") + e.what());
  }
  return series_from_json(j);
}

void write_series(const std::filesystem::path& path, const SparseSeries& d) {
  write_text(path, series_to_string(d));
}

SparseSeries read_series(const std::filesystem::path& path) {
  return series_from_string(read_text(path));
}

nlohmann::json point_to_json(const PolyPoint& z) {
  nlohmann::json out = nlohmann::json::array();
  for (auto pos : z.positions()) {
    const Complex c = z.at(pos);
    out.push_back({pos, c.real(), c.imag()});
  }
  return out;
}

PolyPoint point_from_json(const nlohmann::json& j) {
  PolyPoint z;
  try {
    for (const auto& e : j) {
      z.set(e.at(0).get<std::uint32_t>(), Complex(e.at(1).get<double>(), e.at(2).get<double>()));
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed point: ") + e.what());
  }
  return z;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string growth_csv(const std::vector<GrowthRow>& rows) {
  std::string out = "N_log10,sigma,A_N\n";
  for (const auto& r : rows) {
    out += format_double(r.n_log10) + "," + format_double(r.sigma) + "," +
           format_double(r.a_n) + "\n";
  }
  return out;
}

std::vector<GrowthRow> parse_growth_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "N_log10,sigma,A_N") {
    throw InvalidInput("growth CSV must start with N_log10,sigma,A_N");
  }
  std::vector<GrowthRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    GrowthRow r{};
    if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &r.n_log10, &r.sigma, &r.a_n) != 3) {
      throw InvalidInput("bad growth CSV row: " + line);
    }
    rows.push_back(r);
  }
  return rows;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path.string());
  out << text;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace bohrlab
