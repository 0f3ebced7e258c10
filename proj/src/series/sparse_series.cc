#include "bohrlab/series/sparse_series.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <string>

#include "bohrlab/error.h"
#include "bohrlab/series/index.h"

namespace bohrlab {
namespace {

void require_same_side(const SparseSeries& d, const SparseSeries& e) {
  if (d.side() != e.side()) {
    throw SideMismatch("operands live on different sides of the Bohr transform");
  }
}

}  // namespace

std::string_view side_name(Side side) {
  return side == Side::kDirichlet ? "dirichlet" : "power";
}

Side parse_side(std::string_view name) {
  if (name == "dirichlet") return Side::kDirichlet;
  if (name == "power") return Side::kPower;
  throw InvalidInput("unknown side '" + std::string(name) + "'");
}

ArithmeticBudget ArithmeticBudget::from_env() {
  ArithmeticBudget b;
  if (const char* v = std::getenv("BOHRLAB_MAX_TERMS")) {
    char* end = nullptr;
    const unsigned long long n = std::strtoull(v, &end, 10);
    if (end != v && n > 0) b.max_terms = static_cast<std::size_t>(n);
  }
  return b;
}

ArithmeticBudget& default_budget() {
  static ArithmeticBudget budget = ArithmeticBudget::from_env();
  return budget;
}

SparseSeries SparseSeries::from_terms(Side side, std::vector<Term> terms,
                                      bool reject_duplicates,
                                      double prune_below) {
  auto less = [](const Term& a, const Term& b) { return a.alpha < b.alpha; };
  if (!std::is_sorted(terms.begin(), terms.end(), less)) {
    std::stable_sort(terms.begin(), terms.end(), less);
  }
  SparseSeries out(side);
  out.terms_.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.terms_.empty() && out.terms_.back().alpha == t.alpha) {
      if (reject_duplicates) {
        throw InvalidInput("duplicate multi-index " + t.alpha.to_string());
      }
      out.terms_.back().coeff += t.coeff;
    } else {
      out.terms_.push_back(std::move(t));
    }
  }
  std::erase_if(out.terms_, [prune_below](const Term& t) {
    return t.coeff == Complex(0.0, 0.0) || std::abs(t.coeff) < prune_below;
  });
  return out;
}

SparseSeries SparseSeries::unit(Side side) {
  return monomial(side, MultiIndex(), 1.0);
}

SparseSeries SparseSeries::monomial(Side side, MultiIndex alpha, Complex coeff) {
  std::vector<Term> terms;
  terms.push_back({std::move(alpha), coeff});
  return from_terms(side, std::move(terms));
}

SparseSeries SparseSeries::dirichlet_term(const BigInt& n, Complex coeff) {
  return monomial(Side::kDirichlet, index_to_multiindex(n), coeff);
}

Complex SparseSeries::coefficient(const MultiIndex& alpha) const {
  auto it = std::lower_bound(
      terms_.begin(), terms_.end(), alpha,
      [](const Term& t, const MultiIndex& a) { return t.alpha < a; });
  return (it != terms_.end() && it->alpha == alpha) ? it->coeff : Complex(0.0);
}

bool SparseSeries::contains(const MultiIndex& alpha) const {
  return coefficient(alpha) != Complex(0.0);
}

SparseSeries SparseSeries::as(Side side) const {
  SparseSeries out = *this;
  out.side_ = side;
  return out;
}

std::uint32_t SparseSeries::max_position() const {
  std::uint32_t m = 0;
  for (const auto& t : terms_) m = std::max(m, t.alpha.max_position());
  return m;
}

std::vector<std::uint32_t> SparseSeries::support_positions() const {
  std::set<std::uint32_t> positions;
  for (const auto& t : terms_) {
    for (const auto& e : t.alpha.entries()) positions.insert(e.position);
  }
  return {positions.begin(), positions.end()};
}

double SparseSeries::coefficient_sum() const {
  long double s = 0.0L;
  for (const auto& t : terms_) s += std::abs(t.coeff);
  return static_cast<double>(s);
}

bool operator==(const SparseSeries& a, const SparseSeries& b) {
  if (a.side_ != b.side_ || a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].alpha != b.terms_[i].alpha ||
        a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

SparseSeries add(const SparseSeries& d, const SparseSeries& e) {
  require_same_side(d, e);
  // Both inputs are sorted: one merge pass.
  std::vector<Term> terms;
  terms.reserve(d.size() + e.size());
  auto i = d.terms().begin(), j = e.terms().begin();
  while (i != d.terms().end() || j != e.terms().end()) {
    if (j == e.terms().end() || (i != d.terms().end() && i->alpha < j->alpha)) {
      terms.push_back(*i++);
    } else if (i == d.terms().end() || j->alpha < i->alpha) {
      terms.push_back(*j++);
    } else {
      terms.push_back({i->alpha, i->coeff + j->coeff});
      ++i;
      ++j;
    }
  }
  return SparseSeries::from_terms(d.side(), std::move(terms));
}

SparseSeries subtract(const SparseSeries& d, const SparseSeries& e) {
  return add(d, scale(-1.0, e));
}

SparseSeries scale(Complex lambda, const SparseSeries& d) {
  std::vector<Term> terms;
  terms.reserve(d.size());
  for (const auto& t : d.terms()) terms.push_back({t.alpha, lambda * t.coeff});
  return SparseSeries::from_terms(d.side(), std::move(terms));
}

SparseSeries multiply(const SparseSeries& d, const SparseSeries& e,
                      const ArithmeticBudget& budget) {
  require_same_side(d, e);
  const std::size_t products = d.size() * e.size();
  if (d.size() != 0 && products / d.size() != e.size()) {
    throw BudgetExceeded("product size overflows");
  }
  if (products > budget.max_terms) {
    throw BudgetExceeded("multiply needs " + std::to_string(products) +
                         " products; budget is " +
                         std::to_string(budget.max_terms));
  }
  std::vector<Term> terms;
  terms.reserve(products);
  for (const auto& a : d.terms()) {
    for (const auto& b : e.terms()) {
      terms.push_back({a.alpha + b.alpha, a.coeff * b.coeff});
    }
  }
  return SparseSeries::from_terms(d.side(), std::move(terms), false,
                                  budget.prune_below);
}

SparseSeries power(const SparseSeries& d, std::uint32_t q,
                   const ArithmeticBudget& budget) {
  SparseSeries result = SparseSeries::unit(d.side());
  SparseSeries base = d;
  while (q > 0) {
    if (q & 1u) result = multiply(result, base, budget);
    q >>= 1;
    if (q > 0) base = multiply(base, base, budget);
  }
  return result;
}

SparseSeries combine(const SparseSeries& d, std::span<const Complex> lambda,
                     const ArithmeticBudget& budget) {
  if (lambda.empty()) throw InvalidInput("combine needs at least one coefficient");
  std::vector<SparseSeries> powers;
  powers.reserve(lambda.size());
  powers.push_back(d);
  for (std::size_t i = 1; i < lambda.size(); ++i) {
    powers.push_back(multiply(powers.back(), d, budget));
  }
  return combine_powers(powers, lambda);
}

SparseSeries combine_powers(std::span<const SparseSeries> powers,
                            std::span<const Complex> lambda) {
  if (lambda.empty() || powers.size() < lambda.size()) {
    throw InvalidInput("combine needs one power per coefficient");
  }
  std::vector<Term> terms;
  for (std::size_t i = 0; i < lambda.size(); ++i) {
    if (lambda[i] == Complex(0.0)) continue;
    for (const auto& t : powers[i].terms()) {
      terms.push_back({t.alpha, lambda[i] * t.coeff});
    }
  }
  return SparseSeries::from_terms(powers[0].side(), std::move(terms));
}

SparseSeries linear_combination(std::span<const Complex> coeffs,
                                std::span<const SparseSeries* const> series) {
  if (coeffs.size() != series.size() || series.empty()) {
    throw InvalidInput("linear_combination needs one coefficient per series");
  }
  const Side side = series[0]->side();
  std::size_t total = 0;
  for (const auto* d : series) {
    if (d->side() != side) throw SideMismatch("linear_combination mixes sides");
    total += d->size();
  }
  struct Cursor {
    const Term* at;
    const Term* end;
    Complex c;
  };
  std::vector<Cursor> heap;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (coeffs[i] == Complex(0.0) || series[i]->empty()) continue;
    const auto t = series[i]->terms();
    heap.push_back({t.data(), t.data() + t.size(), coeffs[i]});
  }
  auto greater = [](const Cursor& a, const Cursor& b) { return b.at->alpha < a.at->alpha; };
  std::make_heap(heap.begin(), heap.end(), greater);
  std::vector<Term> terms;
  terms.reserve(total);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), greater);
    Cursor& cur = heap.back();
    const Complex v = cur.c * cur.at->coeff;
    if (!terms.empty() && terms.back().alpha == cur.at->alpha) {
      terms.back().coeff += v;
    } else {
      terms.push_back({cur.at->alpha, v});
    }
    if (++cur.at == cur.end) {
      heap.pop_back();
    } else {
      std::push_heap(heap.begin(), heap.end(), greater);
    }
  }
  return SparseSeries::from_terms(side, std::move(terms));
}

SparseSeries shift(const SparseSeries& d, const MultiIndex& by) {
  std::vector<Term> terms;
  terms.reserve(d.size());
  for (const auto& t : d.terms()) terms.push_back({t.alpha + by, t.coeff});
  return SparseSeries::from_terms(d.side(), std::move(terms));
}

SparseSeries homogeneous_part(const SparseSeries& d, std::uint32_t m) {
  std::vector<Term> terms;
  for (const auto& t : d.terms()) {
    if (t.alpha.degree() == m) terms.push_back(t);
  }
  return SparseSeries::from_terms(d.side(), std::move(terms));
}

std::vector<std::uint32_t> omega_tilde(const SparseSeries& d) {
  std::set<std::uint32_t> degrees;
  for (const auto& t : d.terms()) degrees.insert(t.alpha.degree());
  return {degrees.begin(), degrees.end()};
}

double h2_norm(const SparseSeries& d) {
  // Extended accumulation keeps ~1e-15 relative accuracy on 10^6 terms.
  long double s = 0.0L;
  for (const auto& t : d.terms()) {
    const long double re = t.coeff.real(), im = t.coeff.imag();
    s += re * re + im * im;
  }
  return static_cast<double>(std::sqrt(s));
}

Complex h2_inner(const SparseSeries& d, const SparseSeries& e) {
  std::complex<long double> s = 0.0L;
  auto i = d.terms().begin();
  auto j = e.terms().begin();
  while (i != d.terms().end() && j != e.terms().end()) {
    if (i->alpha < j->alpha) {
      ++i;
    } else if (j->alpha < i->alpha) {
      ++j;
    } else {
      s += std::complex<long double>(i->coeff) * std::conj(std::complex<long double>(j->coeff));
      ++i;
      ++j;
    }
  }
  return {static_cast<double>(s.real()), static_cast<double>(s.imag())};
}

}  // namespace bohrlab
