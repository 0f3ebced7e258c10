#ifndef BOHRLAB_CONSTRUCT_GALOIS_FIELD_H_
#define BOHRLAB_CONSTRUCT_GALOIS_FIELD_H_

#include <cstdint>
#include <vector>

namespace bohrlab {

// GF(p^k) with elements encoded as integers 0..q-1 whose base-p digits are
// the coefficients of a polynomial in x modulo a monic irreducible f.
// Multiplication goes through discrete log tables.
class GaloisField {
 public:
  static constexpr std::uint32_t kMaxOrder = 1u << 22;

  // Throws InvalidInput for non-prime p, k = 0 or q > kMaxOrder, and Error
  // if no irreducible polynomial of degree k is found.
  GaloisField(std::uint32_t p, std::uint32_t k);

  std::uint32_t characteristic() const { return p_; }
  std::uint32_t degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  // Coefficients f_0..f_{k-1} of the modulus (f_k = 1 implied).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  std::uint32_t inverse(std::uint32_t a) const;
  std::uint32_t from_integer(std::int64_t n) const;  // n * 1
  // Absolute trace to GF(p), returned as 0..p-1.
  std::uint32_t trace(std::uint32_t a) const { return trace_[a]; }
  std::uint32_t primitive_element() const { return exp_.size() > 1 ? exp_[1] : 1; }

 private:
  std::uint32_t p_, k_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<std::uint32_t> exp_, log_, trace_;
};

bool is_prime_u64(std::uint64_t n);

}  // namespace bohrlab

#endif  // BOHRLAB_CONSTRUCT_GALOIS_FIELD_H_
