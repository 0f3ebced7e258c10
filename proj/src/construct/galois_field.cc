#include "bohrlab/construct/galois_field.h"

#include <algorithm>
#include <string>

#include "bohrlab/error.h"

namespace bohrlab {
namespace {

// Dense polynomials over GF(p), lowest coefficient first, no trailing zeros.
using Poly = std::vector<std::uint32_t>;

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint64_t r = 1, b = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

Poly poly_mod(Poly a, const Poly& f, std::uint32_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint32_t lead_inv = inv_mod(f.back(), p);
  while (a.size() > df) {
    const std::size_t shift = a.size() - 1 - df;
    const std::uint64_t c = static_cast<std::uint64_t>(a.back()) * lead_inv % p;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - c * f[i] % p) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = static_cast<std::uint32_t>((c[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(c), f, p);
}

Poly poly_sub(Poly a, const Poly& b, std::uint32_t p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

Poly poly_gcd(Poly a, Poly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// x^(p^e) mod f by e successive p-th powers.
Poly frobenius_x(std::uint32_t e, const Poly& f, std::uint32_t p) {
  Poly x = poly_mod({0, 1}, f, p);
  for (std::uint32_t i = 0; i < e; ++i) {
    Poly r = {1};
    Poly base = x;
    for (std::uint32_t n = p; n; n >>= 1) {
      if (n & 1) r = poly_mulmod(r, base, f, p);
      base = poly_mulmod(base, base, f, p);
    }
    x = std::move(r);
  }
  return x;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<std::uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

// Rabin's test.
bool irreducible(const Poly& f, std::uint32_t p) {
  const auto k = static_cast<std::uint32_t>(f.size() - 1);
  const Poly x = poly_mod({0, 1}, f, p);
  if (poly_sub(frobenius_x(k, f, p), x, p).size() != 0) return false;
  for (std::uint32_t r : prime_factors(k)) {
    const Poly g = poly_gcd(f, poly_sub(frobenius_x(k / r, f, p), x, p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

GaloisField::GaloisField(std::uint32_t p, std::uint32_t k) : p_(p), k_(k) {
  if (!is_prime_u64(p)) throw InvalidInput(std::to_string(p) + " is not prime");
  if (k == 0) throw InvalidInput("field degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    q *= p;
    if (q > kMaxOrder) throw InvalidInput("field order exceeds supported size");
  }
  q_ = static_cast<std::uint32_t>(q);

  // Monic modulus of degree k; for k = 1 the field is Z/p and f = x.
  Poly f;
  bool found = false;
  for (std::uint32_t low = 0; low < q_ && !found; ++low) {
    f.assign(k + 1, 0);
    std::uint32_t t = low;
    for (std::uint32_t i = 0; i < k; ++i) {
      f[i] = t % p;
      t /= p;
    }
    f[k] = 1;
    if (k == 1 || (f[0] != 0 && irreducible(f, p))) found = true;
  }
  if (!found) throw Error("no irreducible polynomial of the requested degree found");
  modulus_.assign(f.begin(), f.begin() + k);

  auto decode = [&](std::uint32_t a) {
    Poly out(k, 0);
    for (std::uint32_t i = 0; i < k; ++i) {
      out[i] = a % p;
      a /= p;
    }
    trim(out);
    return out;
  };
  auto encode = [&](const Poly& a) {
    std::uint32_t out = 0;
    for (std::size_t i = a.size(); i-- > 0;) out = out * p + a[i];
    return out;
  };

  // Primitive element: order exactly q - 1.
  const auto factors = prime_factors(q_ - 1);
  auto pow_elem = [&](const Poly& base, std::uint64_t e) {
    Poly r = {1}, b = base;
    for (; e; e >>= 1) {
      if (e & 1) r = poly_mulmod(r, b, f, p);
      b = poly_mulmod(b, b, f, p);
    }
    return r;
  };
  std::uint32_t generator = 0;
  for (std::uint32_t g = 1; g < q_ && generator == 0; ++g) {
    const Poly gp = decode(g);
    bool ok = true;
    for (std::uint32_t r : factors) {
      if (pow_elem(gp, (q_ - 1) / r) == Poly{1}) {
        ok = false;
        break;
      }
    }
    if (ok) generator = g;
  }
  if (generator == 0) throw Error("no primitive element found");

  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  Poly cur = {1};
  const Poly gp = decode(generator);
  for (std::uint32_t i = 0; i + 1 < q_; ++i) {
    const std::uint32_t e = encode(cur);
    exp_[i] = e;
    log_[e] = i;
    cur = poly_mulmod(cur, gp, f, p);
  }

  trace_.assign(q_, 0);
  for (std::uint32_t a = 1; a < q_; ++a) {
    std::uint32_t sum = 0, conj = a;
    for (std::uint32_t i = 0; i < k; ++i) {
      sum = add(sum, conj);
      // conj^p
      conj = exp_[static_cast<std::uint64_t>(log_[conj]) * p % (q_ - 1)];
    }
    if (sum >= p) throw Error("trace left the prime field");
    trace_[a] = sum;
  }
}

std::uint32_t GaloisField::add(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t out = 0, scale = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out += ((a % p_ + b % p_) % p_) * scale;
    a /= p_;
    b /= p_;
    scale *= p_;
  }
  return out;
}

std::uint32_t GaloisField::inverse(std::uint32_t a) const {
  if (a == 0) throw InvalidInput("zero has no inverse");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t GaloisField::from_integer(std::int64_t n) const {
  const std::int64_t r = ((n % p_) + p_) % p_;
  return static_cast<std::uint32_t>(r);
}

}  // namespace bohrlab
