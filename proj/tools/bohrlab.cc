// bohrlab construct|embed|perturb|verify; see README for the file layout.
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "bohrlab/error.h"
#include "bohrlab/harness/commands.h"
#include "bohrlab/harness/run_config.h"

namespace {

using namespace bohrlab;

RunConfig config_for(const std::string& command, const std::string& path,
                     std::optional<std::uint64_t> seed) {
  RunConfig c = path.empty() ? RunConfig{} : load_config(path);
  c.command = command;
  if (seed) c.seed = *seed;
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dirichlet series certificates"};
  app.require_subcommand(1);
  std::string config, out, which, series, certificate;
  std::optional<std::uint64_t> seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config, "run configuration (JSON)")->check(CLI::ExistingFile);
    sub->add_option("--out", out, "output directory")->required();
    sub->add_option("--seed", seed, "override the configured seed");
  };
  auto* construct = app.add_subcommand("construct", "build P and its growth certificate");
  add_common(construct);
  auto* embed = app.add_subcommand("embed", "l1 / l2 embedding certificates");
  add_common(embed);
  embed->add_option("--which", which, "l1 or l2 (overrides the config)")
      ->check(CLI::IsMember({"l1", "l2"}));
  auto* perturb = app.add_subcommand("perturb", "density perturbation certificates");
  add_common(perturb);
  auto* verify = app.add_subcommand("verify", "recompute certificates from series");
  verify->add_option("--series", series, "series file");
  verify->add_option("--certificate", certificate, "certificate file");
  verify->add_option("--out", out, "directory with a manifest.json");
  verify->add_option("--config", config, "ignored; accepted for a uniform interface");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInvalid;
  }

  const auto run = [&](CommandOutcome (*cmd)(const RunConfig&, const std::filesystem::path&),
                       const std::string& name) {
    return run_guarded(
        [&] {
          RunConfig c = config_for(name, config, seed);
          if (!which.empty()) c.embed.which = which;
          const CommandOutcome o = cmd(c, out);
          std::cout << o.summary.dump(1) << "\n";
          return o.exit_code;
        },
        out, std::cerr);
  };
  if (construct->parsed()) return run(cmd_construct, "construct");
  if (embed->parsed()) return run(cmd_embed, "embed");
  if (perturb->parsed()) return run(cmd_perturb, "perturb");
  return run_guarded(
      [&] {
        VerifyOutcome v;
        if (!series.empty() && !certificate.empty()) {
          v = cmd_verify(series, certificate);
        } else if (!out.empty()) {
          v = verify_directory(out);
        } else {
          throw InvalidInput("verify needs --series and --certificate, or --out");
        }
        const nlohmann::json r = {{"match", v.match}, {"verdict", v.verdict ? "pass" : "fail"},
                                  {"detail", v.detail}};
        std::cout << r.dump(1) << "\n";
        if (!v.match) std::cerr << v.detail << "\n";
        return v.match ? kExitPass : kExitFail;
      },
      {}, std::cerr);
}
