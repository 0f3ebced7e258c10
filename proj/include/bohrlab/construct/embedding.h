#ifndef BOHRLAB_CONSTRUCT_EMBEDDING_H_
#define BOHRLAB_CONSTRUCT_EMBEDDING_H_

#include <cstdint>
#include <span>
#include <vector>

#include "bohrlab/construct/certificate.h"
#include "bohrlab/construct/block_poly.h"

namespace bohrlab {

struct EmbeddingOptions {
  std::uint32_t M_max = 4;
  std::uint32_t K = 2;
  std::size_t max_terms = 1'000'000;  // per member polynomial
  double slack = 0.1;                 // declared l1 slack
  std::uint64_t seed = 1;
  std::size_t samples = 8;            // random sup samples per member
};

// Members P_{k,m} (m = 2..M_max) on pairwise disjoint Theta_{k,m}, each
// normalised by its sampled lower sup estimate L_{k,m}.
class L1Embedding {
 public:
  struct Member {
    std::uint32_t k, m;
    Progression theta;
    SparseSeries normalized{Side::kPower};  // P_{k,m} / L_{k,m}
    PolyPoint witness;                      // normalized(witness) = 1 > 0
    double lower;                           // L_{k,m}
    double upper;                           // proven (or trusted) sup bound
    std::uint32_t depth;
  };

  L1Embedding(std::size_t count, const EmbeddingOptions& options);

  struct Result {
    SparseSeries image;  // Dirichlet side
    Certificate certificate;
    double lower = 0, upper = 0, target = 0;
    PolyPoint witness;
  };
  Result apply(std::span<const Complex> lambda) const;

  const std::vector<Member>& members() const { return members_; }
  double measured_slack() const { return slack_; }

 private:
  EmbeddingOptions options_;
  std::size_t count_;
  std::vector<Member> members_;
  double slack_ = 0;
};

// D_{k,m} (m = 3..M_max) from make_Dkm(Theta_{k,m}, m-1, m, h2).
class L2Embedding {
 public:
  struct Member {
    std::uint32_t k, m;
    Progression theta;
    DirichletConstruction construction;
  };

  L2Embedding(std::size_t count, const EmbeddingOptions& options);

  struct Result {
    SparseSeries image;
    Certificate isometry;
    double norm_sq = 0, expected = 0;
  };
  Result apply(std::span<const Complex> lambda) const;
  // Pairwise inner products and norms of the members.
  Certificate orthonormality() const;

  const std::vector<Member>& members() const { return members_; }

 private:
  EmbeddingOptions options_;
  std::size_t count_;
  std::vector<Member> members_;
};

L1Embedding::Result embed_l1(std::span<const Complex> lambda,
                             const EmbeddingOptions& options = {});
L2Embedding::Result embed_l2(std::span<const Complex> lambda,
                             const EmbeddingOptions& options = {});

}  // namespace bohrlab

#endif  // BOHRLAB_CONSTRUCT_EMBEDDING_H_
