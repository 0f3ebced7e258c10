#include "bohrlab/series/theta.h"

namespace bohrlab {

std::string Progression::to_string() const {
  return "{" + std::to_string(u) + "+" + std::to_string(v) + "k}";
}

bool ThetaSet::contains(std::uint64_t position) const {
  if (const auto* p = std::get_if<Progression>(&repr_)) return p->contains(position);
  return std::get<std::set<std::uint64_t>>(repr_).count(position) > 0;
}

bool is_theta_supported(const SparseSeries& d, const ThetaSet& theta) {
  for (const auto& t : d.terms()) {
    for (const auto& e : t.alpha.entries()) {
      if (!theta.contains(e.position)) return false;
    }
  }
  return true;
}

bool avoids_theta(const SparseSeries& d, const ThetaSet& theta) {
  for (const auto& t : d.terms()) {
    for (const auto& e : t.alpha.entries()) {
      if (theta.contains(e.position)) return false;
    }
  }
  return true;
}

}  // namespace bohrlab
