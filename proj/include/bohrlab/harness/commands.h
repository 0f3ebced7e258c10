#ifndef BOHRLAB_HARNESS_COMMANDS_H_
#define BOHRLAB_HARNESS_COMMANDS_H_

#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>

#include "json.hpp"

#include "bohrlab/construct/certificate.h"
#include "bohrlab/harness/run_config.h"
#include "bohrlab/series/sparse_series.h"

namespace bohrlab {

enum ExitCode : int { kExitPass = 0, kExitFail = 1, kExitInvalid = 2, kExitBudget = 3 };

struct CommandOutcome {
  int exit_code = kExitPass;
  nlohmann::json summary;
};

// Each command writes its series, certificates, summary.json and a
// manifest.json listing (certificate, series) pairs for verify.
CommandOutcome cmd_construct(const RunConfig& config, const std::filesystem::path& out);
CommandOutcome cmd_embed(const RunConfig& config, const std::filesystem::path& out);
CommandOutcome cmd_perturb(const RunConfig& config, const std::filesystem::path& out);

// Named series read from one file: a plain series is stored as "series";
// {"bundle": {name: series}, "meta": {...}} holds several.
struct SeriesBundle {
  std::map<std::string, SparseSeries> series;
  nlohmann::json meta = nlohmann::json::object();

  const SparseSeries& get(const std::string& name) const;
  const SparseSeries& single() const;
};
SeriesBundle read_bundle(const std::filesystem::path& path);
nlohmann::json bundle_to_json(const SeriesBundle& bundle);

// Rebuilds the rows of `emitted` from the series alone.
Certificate recompute_certificate(const Certificate& emitted, const SeriesBundle& bundle);

struct VerifyOutcome {
  bool match = false;    // rows, columns and verdict agree
  bool verdict = false;  // recomputed verdict
  std::string detail;
};
inline constexpr double kVerifyTolerance = 1e-9;
VerifyOutcome cmd_verify(const std::filesystem::path& series, const std::filesystem::path& cert);
// Every pair of <dir>/manifest.json.
VerifyOutcome verify_directory(const std::filesystem::path& dir);

// Runs body, mapping library errors onto exit codes; errors are printed to
// `err` as one JSON line and written to <out>/error.json when out is set.
int run_guarded(const std::function<int()>& body, const std::filesystem::path& out,
                std::ostream& err);

// Applies budgets, honouring BOHRLAB_MAX_TERMS over the config value.
void apply_budgets(const Budgets& budgets);

}  // namespace bohrlab

#endif  // BOHRLAB_HARNESS_COMMANDS_H_
