#ifndef BOHRLAB_HARNESS_RUN_CONFIG_H_
#define BOHRLAB_HARNESS_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "bohrlab/algebra/membership.h"
#include "bohrlab/series/theta.h"

namespace bohrlab {

struct Budgets {
  std::size_t max_terms = 10'000'000;
  double max_seconds = 600;
};

struct ConstructConfig {
  std::uint32_t m = 2, p = 5, K = 4;
  double epsilon = 0.5;
  Progression theta{0, 1};
  std::size_t sup_samples = 64;
};

struct EmbedConfig {
  std::string which = "l1";
  std::uint32_t M_max = 4, K = 2;
  double slack = 0.1;
  std::size_t sup_samples = 8;
  std::size_t count = 2;                       // dimension of lambda
  std::vector<std::vector<Complex>> lambdas;   // explicit ones first
  std::size_t random_lambdas = 10;             // then seeded Gaussian ones
};

struct PerturbConfig {
  MembershipQuery query;
  double epsilon = 32;
  Progression theta{0, 1};
  // Dirichlet terms (n, coefficient); default 1 + 2 * 3^{-s}.
  std::vector<std::pair<BigInt, Complex>> d1 = {{1, 1.0}, {3, 2.0}};
  std::size_t samples = 32;
  std::uint32_t d2_blocks = 0;
  std::size_t disjointness_count = 50;
  Progression disjointness_theta{0, 2};
};

// Everything a run depends on; the outputs are a function of this record.
struct RunConfig {
  std::string command;
  std::uint64_t seed = 1;
  Budgets budgets;
  ConstructConfig construct;
  EmbedConfig embed;
  PerturbConfig perturb;

  nlohmann::json to_json() const;
  // Missing keys keep their defaults; unknown top-level keys are rejected.
  static RunConfig from_json(const nlohmann::json& j);
};

RunConfig load_config(const std::filesystem::path& path);

}  // namespace bohrlab

#endif  // BOHRLAB_HARNESS_RUN_CONFIG_H_
