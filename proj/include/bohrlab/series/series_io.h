#ifndef BOHRLAB_SERIES_SERIES_IO_H_
#define BOHRLAB_SERIES_SERIES_IO_H_

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bohrlab/series/poly_point.h"
#include "bohrlab/series/sparse_series.h"

namespace bohrlab {

// {"side":"dirichlet|power","terms":[{"alpha":[[pos,exp],...],"re":x,"im":y}]}
nlohmann::json series_to_json(const SparseSeries& d);
// Rejects duplicate alphas and malformed entries with InvalidInput.
SparseSeries series_from_json(const nlohmann::json& j);

// One term per line; parses back with series_from_string.
std::string series_to_string(const SparseSeries& d);
void append_series_text(std::string& out, const SparseSeries& d);
SparseSeries series_from_string(const std::string& text);

void write_series(const std::filesystem::path& path, const SparseSeries& d);
SparseSeries read_series(const std::filesystem::path& path);

// [[position, re, im], ...] in position order.
nlohmann::json point_to_json(const PolyPoint& z);
PolyPoint point_from_json(const nlohmann::json& j);

struct GrowthRow {
  double n_log10;
  double sigma;
  double a_n;
};

// Header "N_log10,sigma,A_N"; values printed with %.17g.
std::string growth_csv(const std::vector<GrowthRow>& rows);
std::vector<GrowthRow> parse_growth_csv(const std::string& text);

// Shared number formatting for every text artifact.
std::string format_double(double x);

void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace bohrlab

#endif  // BOHRLAB_SERIES_SERIES_IO_H_
