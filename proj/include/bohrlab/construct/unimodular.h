#ifndef BOHRLAB_CONSTRUCT_UNIMODULAR_H_
#define BOHRLAB_CONSTRUCT_UNIMODULAR_H_

#include <cstdint>
#include <string>

#include "bohrlab/series/poly_point.h"
#include "bohrlab/series/sparse_series.h"

namespace bohrlab {

// Smallest modulus of a sum of N p-th roots of unity, N ranging over the
// multinomials m!/alpha! with |alpha| = m. Every such sum is nonzero because
// p > m means p does not divide N. Exhaustive over root counts when that is
// cheap; otherwise the norm bound |x| >= N^{-(p-2)} for a nonzero algebraic
// integer of Q(omega) whose conjugates are all <= N.
struct CoefficientFloor {
  double eta;
  bool exhaustive;
};
CoefficientFloor unimodular_sum_floor(std::uint32_t p, std::uint32_t m);

struct UnimodularPoly {
  SparseSeries poly;        // power side, positions 1..q
  std::uint32_t q;          // p^k
  double norm_bound;        // q^{(m+1)/2}
  double coefficient_min;   // min |c_alpha|
  PolyPoint witness;        // unimodular point with |R(witness)| = witness_value
  double witness_value;
  std::string construction;  // "chain-character" or "random-unimodular"
};

// m-homogeneous R_k in p^k variables whose multilinear coefficients are the
// p-th roots of unity omega^{tr(xi_1 xi_2 + xi_2 xi_3 + ... + xi_{m-1} xi_m)}
// over GF(p^k); variable j carries the field element encoded as j - 1.
// At m = 2 this is omega^{tr(xi_1 xi_2)}. The witness is the best affine chirp
// z_x = omega^{tr(a x^2 + b x)} found, which reaches q^{(m+1)/2} on every case
// searched so far.
UnimodularPoly make_unimodular_poly(std::uint32_t p, std::uint32_t k, std::uint32_t m,
                                    std::size_t max_terms = 10'000'000);

// Fallback: multilinear coefficients are seeded random p-th roots of unity;
// draws whose grouped coefficients dip below the floor or whose sampled sup
// exceeds safety * q^{(m+1)/2} are rejected.
UnimodularPoly make_random_unimodular_poly(std::uint32_t p, std::uint32_t q,
                                           std::uint32_t m, std::uint64_t seed,
                                           double safety = 1.05,
                                           std::size_t attempts = 32);

// |R(z)| for the chain form evaluated by the transfer-matrix product,
// O(m q^2) instead of O(#terms).
double chain_value(std::uint32_t p, std::uint32_t k, std::uint32_t m,
                   const std::vector<Complex>& z);

// Number of alpha with |alpha| = m over n variables.
std::uint64_t homogeneous_count(std::uint64_t n, std::uint32_t m);

}  // namespace bohrlab

#endif  // BOHRLAB_CONSTRUCT_UNIMODULAR_H_
