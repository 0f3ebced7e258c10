#include "bohrlab/series/poly_point.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "bohrlab/error.h"

namespace bohrlab {

void PolyPoint::set(std::uint32_t position, Complex z) {
  if (position >= values_.size()) {
    values_.resize(position + 1);
    present_.resize(position + 1, false);
  }
  values_[position] = z;
  present_[position] = true;
}

Complex PolyPoint::at(std::uint32_t position) const {
  if (!has(position)) {
    throw InvalidInput("missing coordinate for position " +
                       std::to_string(position));
  }
  return values_[position];
}

std::vector<std::uint32_t> PolyPoint::positions() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t p = 0; p < present_.size(); ++p) {
    if (present_[p]) out.push_back(p);
  }
  return out;
}

std::size_t PolyPoint::dimension() const {
  return static_cast<std::size_t>(std::count(present_.begin(), present_.end(), true));
}

void PolyPoint::absorb(const PolyPoint& other) {
  for (std::uint32_t p : other.positions()) {
    if (has(p)) {
      throw InvalidInput("points overlap at position " + std::to_string(p));
    }
    set(p, other.values_[p]);
  }
}

void PolyPoint::rotate(double phi) {
  const Complex r = std::polar(1.0, phi);
  for (std::size_t p = 0; p < values_.size(); ++p) {
    if (present_[p]) values_[p] *= r;
  }
}

namespace {

Complex monomial_value(const MultiIndex& alpha, const PolyPoint& z) {
  Complex v = 1.0;
  for (const auto& e : alpha.entries()) {
    const Complex zj = z.at(e.position);
    Complex pw = zj;
    for (std::uint32_t k = 1; k < e.exponent; ++k) pw *= zj;
    v *= pw;
  }
  return v;
}

// Coordinate ascent on the polytorus: each pass re-chooses the phase of every
// variable to maximise |D| with the other coordinates frozen.
class PhaseAscent {
 public:
  PhaseAscent(const SparseSeries& d, const std::vector<std::uint32_t>& vars,
              std::size_t grid)
      : d_(d), vars_(vars), grid_(grid) {
    std::uint32_t max_pos = vars.empty() ? 0 : vars.back();
    by_var_.resize(max_pos + 1);
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (const auto& e : d.terms()[i].alpha.entries()) {
        by_var_[e.position].push_back({i, e.exponent});
      }
    }
  }

  double run(PolyPoint& z, std::size_t sweeps) {
    values_.resize(d_.size());
    Complex total = 0.0;
    for (std::size_t i = 0; i < d_.size(); ++i) {
      values_[i] = d_.terms()[i].coeff * monomial_value(d_.terms()[i].alpha, z);
      total += values_[i];
    }
    double best = std::abs(total);
    for (std::size_t s = 0; s < sweeps; ++s) {
      const double before = best;
      for (std::uint32_t var : vars_) total = optimise(z, var, total);
      // Re-sum to shed drift from incremental updates.
      total = 0.0;
      for (const auto& v : values_) total += v;
      best = std::abs(total);
      if (best <= before * (1.0 + 1e-12)) break;
    }
    return best;
  }

 private:
  struct Use {
    std::size_t term;
    std::uint32_t exponent;
  };

  Complex optimise(PolyPoint& z, std::uint32_t var, Complex total) {
    const auto& uses = by_var_[var];
    if (uses.empty()) return total;
    const Complex zj = z.at(var);
    std::uint32_t max_e = 0;
    for (const auto& u : uses) max_e = std::max(max_e, u.exponent);
    // total(theta) = rest + sum_e coeff[e] e^{i e theta}
    std::vector<Complex> coeff(max_e + 1, 0.0);
    Complex rest = total;
    for (const auto& u : uses) {
      rest -= values_[u.term];
      coeff[u.exponent] += values_[u.term] / std::pow(zj, static_cast<int>(u.exponent));
    }
    double best_abs = -1.0;
    double best_theta = 0.0;
    for (std::size_t g = 0; g < grid_; ++g) {
      const double theta = 2.0 * std::numbers::pi * static_cast<double>(g) /
                           static_cast<double>(grid_);
      const double v = std::abs(value_at(rest, coeff, theta));
      if (v > best_abs) {
        best_abs = v;
        best_theta = theta;
      }
    }
    // Golden-section polish inside the winning grid cell.
    double lo = best_theta - std::numbers::pi / static_cast<double>(grid_);
    double hi = best_theta + std::numbers::pi / static_cast<double>(grid_);
    const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
    for (int it = 0; it < 30; ++it) {
      const double a = hi - ratio * (hi - lo);
      const double b = lo + ratio * (hi - lo);
      if (std::abs(value_at(rest, coeff, a)) > std::abs(value_at(rest, coeff, b))) {
        hi = b;
      } else {
        lo = a;
      }
    }
    const double polished = 0.5 * (lo + hi);
    if (std::abs(value_at(rest, coeff, polished)) > best_abs) best_theta = polished;
    const double current = std::abs(total);
    if (std::abs(value_at(rest, coeff, best_theta)) <= current) return total;

    const Complex new_z = std::polar(1.0, best_theta);
    z.set(var, new_z);
    Complex updated = rest;
    for (const auto& u : uses) {
      const Complex ratio_pow =
          std::pow(new_z / zj, static_cast<int>(u.exponent));
      values_[u.term] *= ratio_pow;
      updated += values_[u.term];
    }
    return updated;
  }

  static Complex value_at(Complex rest, const std::vector<Complex>& coeff,
                          double theta) {
    Complex v = rest;
    for (std::size_t e = 1; e < coeff.size(); ++e) {
      if (coeff[e] != Complex(0.0)) {
        v += coeff[e] * std::polar(1.0, static_cast<double>(e) * theta);
      }
    }
    return v;
  }

  const SparseSeries& d_;
  const std::vector<std::uint32_t>& vars_;
  std::size_t grid_;
  std::vector<std::vector<Use>> by_var_;
  std::vector<Complex> values_;
};

}  // namespace

Complex evaluate_power(const SparseSeries& d, const PolyPoint& z) {
  for (std::uint32_t p : d.support_positions()) {
    if (std::abs(z.at(p)) > 1.0 + 1e-12) {
      throw InvalidInput("coordinate " + std::to_string(p) +
                         " lies outside the closed unit disc");
    }
  }
  Complex total = 0.0;
  for (const auto& t : d.terms()) total += t.coeff * monomial_value(t.alpha, z);
  return total;
}

SupNormEstimate sup_norm_estimate(const SparseSeries& d,
                                  const SupNormOptions& options,
                                  std::span<const PolyPoint> candidates) {
  SupNormEstimate out;
  out.upper = d.coefficient_sum();
  const auto vars = d.support_positions();
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

  auto random_point = [&] {
    PolyPoint z;
    for (std::uint32_t v : vars) z.set(v, std::polar(1.0, phase(rng)));
    return z;
  };

  struct Scored {
    double value;
    PolyPoint point;
  };
  std::vector<Scored> scored;
  for (std::size_t s = 0; s < options.samples; ++s) {
    PolyPoint z = random_point();
    scored.push_back({std::abs(evaluate_power(d, z)), std::move(z)});
  }
  for (const auto& c : candidates) {
    scored.push_back({std::abs(evaluate_power(d, c)), c});
  }
  if (scored.empty()) {
    PolyPoint z = random_point();
    scored.push_back({std::abs(evaluate_power(d, z)), std::move(z)});
  }
  std::stable_sort(scored.begin(), scored.end(),
                   [](const Scored& a, const Scored& b) { return a.value > b.value; });
  out.lower = scored.front().value;
  out.argmax = scored.front().point;

  if (!vars.empty() && options.sweeps > 0) {
    PhaseAscent ascent(d, vars, std::max<std::size_t>(options.phase_grid, 4));
    const std::size_t starts = std::min(options.refined_starts, scored.size());
    for (std::size_t i = 0; i < starts; ++i) {
      PolyPoint z = scored[i].point;
      // Candidates may sit strictly inside the disc; ascent works on the torus.
      bool on_torus = true;
      for (std::uint32_t v : vars) {
        if (std::abs(std::abs(z.at(v)) - 1.0) > 1e-12) on_torus = false;
      }
      if (!on_torus) continue;
      ascent.run(z, options.sweeps);
      // Certify the refined value by a fresh evaluation.
      const double v = std::abs(evaluate_power(d, z));
      if (v > out.lower) {
        out.lower = v;
        out.argmax = std::move(z);
      }
    }
  }
  out.lower = std::min(out.lower, out.upper);
  return out;
}

}  // namespace bohrlab
