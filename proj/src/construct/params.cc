#include "bohrlab/construct/params.h"

#include <cmath>
#include <limits>
#include <string>

#include "bohrlab/construct/galois_field.h"
#include "bohrlab/construct/unimodular.h"
#include "bohrlab/error.h"

namespace bohrlab {

std::uint32_t BlockScheme::block_of(std::uint64_t position) const {
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    if (!blocks[k].empty() && position >= blocks[k].front() && position <= blocks[k].back()) {
      return theta.contains(position) ? static_cast<std::uint32_t>(k + 1) : 0;
    }
  }
  return 0;
}

std::uint64_t BlockScheme::max_position() const {
  return blocks.empty() ? 0 : blocks.back().back();
}

BlockScheme make_blocks(std::uint64_t u, std::uint64_t v, std::uint32_t p,
                        std::uint32_t K, std::uint32_t m) {
  if (!is_prime_u64(p)) throw InvalidInput("block size base p must be prime");
  if (p <= m) throw InvalidInput("need p > m (p=" + std::to_string(p) + ", m=" + std::to_string(m) + ")");
  if (v == 0) throw InvalidInput("progression step v must be >= 1");
  BlockScheme s;
  s.theta = {u, v};
  s.p = p;
  s.m = m;
  std::uint64_t next = 1, size = 1;
  for (std::uint32_t k = 1; k <= K; ++k) {
    size *= p;
    if (size > (1ull << 32)) throw InvalidInput("block sizes overflow");
    std::vector<std::uint64_t> block;
    block.reserve(size);
    for (std::uint64_t j = 0; j < size; ++j, ++next) {
      const std::uint64_t pos = s.theta.element(next);
      if (pos < next || pos > std::numeric_limits<std::uint32_t>::max()) {
        throw InvalidInput("block position overflows the prime index range");
      }
      block.push_back(pos);
    }
    s.blocks.push_back(std::move(block));
  }
  return s;
}

ConstructionParams ConstructionParams::solve(std::uint32_t m, std::uint32_t p,
                                             std::uint32_t K, double epsilon) {
  if (m < 2) throw InvalidInput("degree m must be >= 2");
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  ConstructionParams c;
  c.m = m;
  c.p = p;
  c.K = K;
  c.epsilon = epsilon;
  const double t0 = c.base_exponent();
  c.delta = 1.0 - t0 / (t0 + epsilon);
  const double lo = std::pow(static_cast<double>(p), -c.delta / (1.0 - c.delta));
  c.b = 0.5 * (lo + 1.0);
  if (!is_prime_u64(p) || p <= m) throw InvalidInput("need a prime p > m");
  const auto floor = unimodular_sum_floor(p, m);
  c.eta = floor.eta;
  c.eta_exhaustive = floor.exhaustive;
  c.validate();
  return c;
}

ConstructionParams ConstructionParams::with_delta(std::uint32_t m, std::uint32_t p,
                                                  std::uint32_t K, double delta, double b) {
  if (m < 2) throw InvalidInput("degree m must be >= 2");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("delta must lie in (0,1)");
  ConstructionParams c;
  c.m = m;
  c.p = p;
  c.K = K;
  c.delta = delta;
  c.b = b;
  c.epsilon = c.base_exponent() / (1.0 - delta) - c.base_exponent();
  if (!is_prime_u64(p) || p <= m) throw InvalidInput("need a prime p > m");
  const auto floor = unimodular_sum_floor(p, m);
  c.eta = floor.eta;
  c.eta_exhaustive = floor.exhaustive;
  c.validate();
  return c;
}

double ConstructionParams::geometric_base() const {
  return std::pow(static_cast<double>(p), delta) * std::pow(b, 1.0 - delta);
}

double ConstructionParams::geometric_ratio() const {
  return std::pow(geometric_base(), (m - 1) / 2.0);
}

void ConstructionParams::validate() const {
  if (m < 2) throw InvalidInput("degree m must be >= 2");
  if (!is_prime_u64(p) || p <= m) throw InvalidInput("need a prime p > m");
  if (K < 1) throw InvalidInput("need at least one block");
  if (!(epsilon > 0.0)) throw InvalidInput("epsilon must be positive");
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidInput("delta must lie in (0,1)");
  if (!(b > 0.0 && b < 1.0)) throw InvalidInput("b must lie in (0,1)");
  const double t0 = base_exponent();
  if (std::abs(t0 / (1.0 - delta) - exponent()) > 1e-12 * exponent()) {
    throw InvalidInput("delta does not solve 2m/(m-1)+eps = (2m/(m-1))/(1-delta)");
  }
  if (!(geometric_base() > 1.0)) throw InvalidInput("need p^delta b^(1-delta) > 1");
  if (!(eta > 0.0)) throw InvalidInput("coefficient floor must be positive");
  if (!(safety_factor >= 1.0)) throw InvalidInput("safety factor must be >= 1");
}

nlohmann::json ConstructionParams::to_json() const {
  return {{"m", m},         {"p", p},          {"K", K},
          {"epsilon", epsilon}, {"delta", delta}, {"b", b},
          {"eta", eta},     {"eta_exhaustive", eta_exhaustive},
          {"safety_factor", safety_factor}};
}

ConstructionParams ConstructionParams::from_json(const nlohmann::json& j) {
  ConstructionParams c;
  try {
    c.m = j.at("m").get<std::uint32_t>();
    c.p = j.at("p").get<std::uint32_t>();
    c.K = j.at("K").get<std::uint32_t>();
    c.epsilon = j.at("epsilon").get<double>();
    c.delta = j.at("delta").get<double>();
    c.b = j.at("b").get<double>();
    c.eta = j.at("eta").get<double>();
    c.eta_exhaustive = j.at("eta_exhaustive").get<bool>();
    c.safety_factor = j.at("safety_factor").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("malformed construction parameters: ") + e.what());
  }
  c.validate();
  return c;
}

WeightSequence::WeightSequence(const BlockScheme& scheme, const ConstructionParams& params)
    : scheme_(&scheme), params_(params) {
  const double m = params.m;
  for (std::uint32_t k = 1; k <= scheme.depth(); ++k) {
    weights_.push_back(std::pow(params.b / params.p,
                                k * (m - 1.0) / (2.0 * m) * (1.0 - params.delta)));
  }
}

double WeightSequence::at(std::uint64_t position) const {
  const std::uint32_t k = scheme_->block_of(position);
  return k == 0 ? 0.0 : weights_[k - 1];
}

double WeightSequence::lp_sum() const {
  const double t = params_.exponent();
  double total = 0.0;
  for (std::size_t k = 0; k < scheme_->blocks.size(); ++k) {
    for (std::size_t j = 0; j < scheme_->blocks[k].size(); ++j) {
      total += std::pow(weights_[k], t);
    }
  }
  return total;
}

double WeightSequence::transfer_constant() const {
  const double t = params_.exponent();
  const double u = static_cast<double>(scheme_->theta.u);
  const double v = static_cast<double>(scheme_->theta.v);
  return std::pow(u + v, 1.0 / t) * std::pow(params_.b / (1.0 - params_.b), 1.0 / t);
}

}  // namespace bohrlab
