#ifndef BOHRLAB_CONSTRUCT_CERTIFICATE_H_
#define BOHRLAB_CONSTRUCT_CERTIFICATE_H_

#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace bohrlab {

enum class CertificateKind {
  kGrowth,
  kIsometryL1,
  kIsometryL2,
  kOrthonormality,
  kNormBound,
  kDisjointness,
  kMembership,
  kHomogeneity,
};

std::string_view kind_name(CertificateKind kind);
CertificateKind parse_kind(std::string_view name);

// A finite table plus the rule that turns it into a verdict. The verdict is
// a pure function of (rule, rows, tolerance, meta constants); see
// evaluate_rule for the rule list.
struct Certificate {
  CertificateKind kind = CertificateKind::kGrowth;
  std::string rule;
  std::string inputs_digest;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  double tolerance = 0.0;
  nlohmann::json meta = nlohmann::json::object();
  bool verdict = false;
  // Set by rules that can only witness, never refute (membership).
  bool inconclusive = false;

  std::size_t column(std::string_view name) const;
  void add_row(std::vector<double> row);
};

// Recomputes verdict (and the inconclusive flag) from the table.
void finalize(Certificate& cert);
bool evaluate_rule(const Certificate& cert, bool* inconclusive = nullptr);

nlohmann::json certificate_to_json(const Certificate& cert);
Certificate certificate_from_json(const nlohmann::json& j);
std::string certificate_to_string(const Certificate& cert);

// Rows as CSV with the column header; doubles as %.17g, NaN as "nan".
std::string rows_to_csv(const std::vector<std::string>& columns,
                        const std::vector<std::vector<double>>& rows);
std::vector<std::vector<double>> rows_from_csv(const std::string& csv,
                                               std::vector<std::string>* columns);

// SHA-256 (hex) of the compact dump of `params`; object keys are sorted, so
// equal parameter sets give equal digests.
std::string inputs_digest(const nlohmann::json& params);

// Row-by-row comparison used by verify: same shape and every entry within
// rel_tol (relative, abs floor 1e-300), NaNs matching NaNs.
bool rows_match(const std::vector<std::vector<double>>& a,
                const std::vector<std::vector<double>>& b, double rel_tol,
                std::string* detail = nullptr);

}  // namespace bohrlab

#endif  // BOHRLAB_CONSTRUCT_CERTIFICATE_H_
