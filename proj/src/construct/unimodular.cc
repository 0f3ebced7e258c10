#include "bohrlab/construct/unimodular.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "bohrlab/construct/galois_field.h"
#include "bohrlab/error.h"

namespace bohrlab {
namespace {

std::vector<Complex> roots_of_unity(std::uint32_t p) {
  std::vector<Complex> w(p);
  for (std::uint32_t j = 0; j < p; ++j) {
    w[j] = std::polar(1.0, 2.0 * std::numbers::pi * j / p);
  }
  return w;
}

// All partitions of m, as multiplicity lists; gives the distinct m!/alpha!.
void partitions(std::uint32_t m, std::uint32_t max_part, std::vector<std::uint32_t>& cur,
                std::vector<std::vector<std::uint32_t>>& out) {
  if (m == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t part = std::min(m, max_part); part >= 1; --part) {
    cur.push_back(part);
    partitions(m - part, part, cur, out);
    cur.pop_back();
  }
}

double factorial(std::uint32_t n) {
  double f = 1;
  for (std::uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

std::uint64_t binomial_u64(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  long double acc = 1;
  for (std::uint64_t i = 1; i <= r; ++i) acc = acc * (n - r + i) / i;
  if (acc > 1.8e19L) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(std::llround(static_cast<double>(acc)));
}

// min |sum_j n_j omega^j| over compositions n_0 + ... + n_{p-1} = total.
double min_root_sum(std::uint32_t p, std::uint32_t total, const std::vector<Complex>& w) {
  std::vector<std::uint32_t> n(p, 0);
  double best = std::numeric_limits<double>::infinity();
  // Recursive fill of n_0..n_{p-2}; n_{p-1} takes the remainder.
  auto rec = [&](auto&& self, std::uint32_t idx, std::uint32_t left, Complex acc) -> void {
    if (idx + 1 == p) {
      const Complex s = acc + static_cast<double>(left) * w[idx];
      best = std::min(best, std::abs(s));
      return;
    }
    for (std::uint32_t c = 0; c <= left; ++c) {
      self(self, idx + 1, left - c, acc + static_cast<double>(c) * w[idx]);
    }
  };
  rec(rec, 0, total, Complex(0.0));
  return best;
}

std::vector<std::uint32_t> multinomials(std::uint32_t m) {
  std::vector<std::vector<std::uint32_t>> parts;
  std::vector<std::uint32_t> cur;
  partitions(m, m, cur, parts);
  std::vector<std::uint32_t> out;
  for (const auto& part : parts) {
    double v = factorial(m);
    for (std::uint32_t e : part) v /= factorial(e);
    out.push_back(static_cast<std::uint32_t>(std::llround(v)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Enumerates every multiset i_1 <= ... <= i_m of 0..q-1 and, for each, every
// distinct ordering; `visit(multiset, residue_counts)` receives the exponent
// residues of the multilinear coefficients summed over the orderings.
template <typename Visit>
void enumerate_chain(const GaloisField& field, std::uint32_t m, Visit visit) {
  const std::uint32_t q = field.order(), p = field.characteristic();
  std::vector<std::uint32_t> tr(static_cast<std::size_t>(q) * q);
  for (std::uint32_t x = 0; x < q; ++x) {
    for (std::uint32_t y = 0; y < q; ++y) {
      tr[static_cast<std::size_t>(x) * q + y] = field.trace(field.mul(x, y));
    }
  }
  std::vector<std::uint32_t> idx(m, 0), perm(m);
  std::vector<std::uint32_t> counts(p);
  while (true) {
    std::fill(counts.begin(), counts.end(), 0);
    perm = idx;
    do {
      std::uint32_t e = 0;
      for (std::uint32_t t = 0; t + 1 < m; ++t) {
        e += tr[static_cast<std::size_t>(perm[t]) * q + perm[t + 1]];
      }
      ++counts[e % p];
    } while (std::next_permutation(perm.begin(), perm.end()));
    visit(idx, counts);
    // next multiset (non-decreasing sequence)
    int t = static_cast<int>(m) - 1;
    while (t >= 0 && idx[t] == q - 1) --t;
    if (t < 0) break;
    const std::uint32_t v = idx[t] + 1;
    for (std::uint32_t s = static_cast<std::uint32_t>(t); s < m; ++s) idx[s] = v;
  }
}

MultiIndex multiset_alpha(const std::vector<std::uint32_t>& idx) {
  std::vector<IndexEntry> entries;
  for (std::uint32_t x : idx) {
    const std::uint32_t pos = x + 1;
    if (!entries.empty() && entries.back().position == pos) {
      ++entries.back().exponent;
    } else {
      entries.push_back({pos, 1});
    }
  }
  return MultiIndex::from_entries(entries);
}

}  // namespace

std::uint64_t homogeneous_count(std::uint64_t n, std::uint32_t m) {
  if (n == 0) return m == 0 ? 1 : 0;
  return binomial_u64(n + m - 1, m);
}

CoefficientFloor unimodular_sum_floor(std::uint32_t p, std::uint32_t m) {
  if (!is_prime_u64(p) || p <= m) throw InvalidInput("floor needs a prime p > m");
  const auto w = roots_of_unity(p);
  const auto ns = multinomials(m);
  std::uint64_t work = 0;
  for (std::uint32_t n : ns) work += binomial_u64(n + p - 1, p - 1);
  if (work <= 50'000'000) {
    double best = std::numeric_limits<double>::infinity();
    for (std::uint32_t n : ns) best = std::min(best, min_root_sum(p, n, w));
    return {best, true};
  }
  double best = std::numeric_limits<double>::infinity();
  for (std::uint32_t n : ns) best = std::min(best, std::pow(n, -static_cast<double>(p - 2)));
  return {best, false};
}

double chain_value(std::uint32_t p, std::uint32_t k, std::uint32_t m,
                   const std::vector<Complex>& z) {
  const GaloisField field(p, k);
  const std::uint32_t q = field.order();
  const auto w = roots_of_unity(p);
  std::vector<Complex> v(z.begin(), z.end()), next(q);
  for (std::uint32_t t = 1; t < m; ++t) {
    for (std::uint32_t y = 0; y < q; ++y) {
      Complex s = 0.0;
      for (std::uint32_t x = 0; x < q; ++x) s += v[x] * w[field.trace(field.mul(x, y))];
      next[y] = z[y] * s;
    }
    v.swap(next);
  }
  Complex total = 0.0;
  for (const auto& c : v) total += c;
  return std::abs(total);
}

namespace {

struct ChirpResult {
  double value = -1.0;
  std::vector<Complex> z;
};

ChirpResult chirp_search(const GaloisField& field, std::uint32_t m, double target) {
  const std::uint32_t q = field.order(), p = field.characteristic();
  const auto w = roots_of_unity(p);
  std::vector<std::uint32_t> tr(static_cast<std::size_t>(q) * q);
  for (std::uint32_t x = 0; x < q; ++x) {
    for (std::uint32_t y = 0; y < q; ++y) {
      tr[static_cast<std::size_t>(x) * q + y] = field.trace(field.mul(x, y));
    }
  }
  std::vector<Complex> v(q), next(q), z(q);
  auto value = [&](std::uint32_t a, std::uint32_t b) {
    for (std::uint32_t x = 0; x < q; ++x) {
      const std::uint32_t arg = field.add(field.mul(a, field.mul(x, x)), field.mul(b, x));
      z[x] = w[field.trace(arg)];
    }
    v = z;
    for (std::uint32_t t = 1; t < m; ++t) {
      for (std::uint32_t y = 0; y < q; ++y) {
        Complex s = 0.0;
        for (std::uint32_t x = 0; x < q; ++x) {
          s += v[x] * w[tr[static_cast<std::size_t>(x) * q + y]];
        }
        next[y] = z[y] * s;
      }
      v.swap(next);
    }
    Complex total = 0.0;
    for (const auto& c : v) total += c;
    return std::abs(total);
  };

  ChirpResult best;
  auto consider = [&](std::uint32_t a, std::uint32_t b) {
    const double val = value(a, b);
    if (val > best.value) {
      best.value = val;
      best.z = z;
    }
    return best.value >= target * (1 - 1e-9);
  };
  const std::uint32_t half = field.inverse(field.from_integer(2));
  if (consider(0, 1) || consider(half, 0)) return best;
  for (std::uint32_t a = 0; a < q; ++a) {
    if (consider(a, 0)) return best;
  }
  const double work = std::pow(static_cast<double>(q), 4) * m;
  if (work <= 2e8) {
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 1; b < q; ++b) {
        if (consider(a, b)) return best;
      }
    }
  }
  return best;
}

}  // namespace

UnimodularPoly make_unimodular_poly(std::uint32_t p, std::uint32_t k, std::uint32_t m,
                                    std::size_t max_terms) {
  if (m < 2) throw InvalidInput("degree m must be >= 2");
  if (!is_prime_u64(p) || p <= m) throw InvalidInput("need a prime p > m");
  const GaloisField field(p, k);
  const std::uint32_t q = field.order();
  const std::uint64_t count = homogeneous_count(q, m);
  if (count > max_terms) {
    throw BudgetExceeded("R_k has " + std::to_string(count) + " terms, budget " +
                         std::to_string(max_terms));
  }
  const auto w = roots_of_unity(p);
  std::vector<Term> terms;
  terms.reserve(count);
  double cmin = std::numeric_limits<double>::infinity();
  enumerate_chain(field, m, [&](const std::vector<std::uint32_t>& idx,
                                const std::vector<std::uint32_t>& counts) {
    Complex c = 0.0;
    for (std::uint32_t r = 0; r < p; ++r) {
      if (counts[r]) c += static_cast<double>(counts[r]) * w[r];
    }
    cmin = std::min(cmin, std::abs(c));
    terms.push_back({multiset_alpha(idx), c});
  });

  UnimodularPoly out;
  out.poly = SparseSeries::from_terms(Side::kPower, std::move(terms));
  if (out.poly.size() != count) throw Error("a grouped coefficient of R_k vanished");
  out.q = q;
  out.norm_bound = std::pow(static_cast<double>(q), (m + 1) / 2.0);
  out.coefficient_min = cmin;
  out.construction = "chain-character";
  const auto chirp = chirp_search(field, m, out.norm_bound);
  for (std::uint32_t x = 0; x < q; ++x) out.witness.set(x + 1, chirp.z[x]);
  out.witness_value = std::abs(evaluate_power(out.poly, out.witness));
  return out;
}

UnimodularPoly make_random_unimodular_poly(std::uint32_t p, std::uint32_t q,
                                           std::uint32_t m, std::uint64_t seed,
                                           double safety, std::size_t attempts) {
  if (m < 2) throw InvalidInput("degree m must be >= 2");
  if (!is_prime_u64(p) || p <= m) throw InvalidInput("need a prime p > m");
  const auto w = roots_of_unity(p);
  const double bound = std::pow(static_cast<double>(q), (m + 1) / 2.0);
  const double floor = unimodular_sum_floor(p, m).eta;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::uint32_t> root(0, p - 1);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    std::vector<Term> terms;
    double cmin = std::numeric_limits<double>::infinity();
    std::vector<std::uint32_t> idx(m, 0), perm;
    while (true) {
      Complex c = 0.0;
      perm = idx;
      do {
        c += w[root(rng)];
      } while (std::next_permutation(perm.begin(), perm.end()));
      cmin = std::min(cmin, std::abs(c));
      terms.push_back({multiset_alpha(idx), c});
      int t = static_cast<int>(m) - 1;
      while (t >= 0 && idx[t] == q - 1) --t;
      if (t < 0) break;
      const std::uint32_t v = idx[t] + 1;
      for (std::uint32_t s = static_cast<std::uint32_t>(t); s < m; ++s) idx[s] = v;
    }
    if (cmin < floor - 1e-9) continue;
    UnimodularPoly out;
    out.poly = SparseSeries::from_terms(Side::kPower, std::move(terms));
    const auto est = sup_norm_estimate(out.poly, {.samples = 64, .seed = seed + attempt});
    if (est.lower > safety * bound) continue;
    out.q = q;
    out.norm_bound = bound;
    out.coefficient_min = cmin;
    out.witness = est.argmax;
    out.witness_value = est.lower;
    out.construction = "random-unimodular";
    return out;
  }
  throw Error("random unimodular fallback rejected every draw");
}

}  // namespace bohrlab
