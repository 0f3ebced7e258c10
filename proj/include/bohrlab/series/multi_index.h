#ifndef BOHRLAB_SERIES_MULTI_INDEX_H_
#define BOHRLAB_SERIES_MULTI_INDEX_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace bohrlab {

struct IndexEntry {
  std::uint32_t position;  // 1-based prime position
  std::uint32_t exponent;  // >= 1

  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
  friend auto operator<=>(const IndexEntry&, const IndexEntry&) = default;
};

// A finitely supported multi-index alpha in N_0^(N), stored sparsely as
// (position, exponent) pairs sorted by position. Zero exponents are never
// stored, so the empty multi-index is alpha = 0 (the Dirichlet index n = 1).
class MultiIndex {
 public:
  using Storage = boost::container::small_vector<IndexEntry, 4>;

  MultiIndex() = default;

  // Throws InvalidInput unless positions are >= 1, strictly increasing and
  // every exponent is >= 1.
  static MultiIndex from_entries(std::span<const IndexEntry> entries);
  static MultiIndex from_pairs(
      const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs);
  static MultiIndex unit(std::uint32_t position, std::uint32_t exponent = 1);

  std::span<const IndexEntry> entries() const {
    return {entries_.data(), entries_.size()};
  }
  bool empty() const { return entries_.empty(); }
  std::size_t length() const { return entries_.size(); }

  // |alpha|, which is Omega(p^alpha).
  std::uint32_t degree() const;
  std::uint32_t exponent_of(std::uint32_t position) const;
  std::vector<std::uint32_t> support() const;
  std::uint32_t max_position() const {
    return entries_.empty() ? 0 : entries_.back().position;
  }

  // Restriction to the positions accepted by `keep`.
  template <typename Pred>
  MultiIndex restricted(Pred keep) const {
    MultiIndex out;
    for (const auto& e : entries_) {
      if (keep(e.position)) out.entries_.push_back(e);
    }
    return out;
  }

  std::size_t hash() const;
  std::string to_string() const;

  // alpha + beta (multiplication of the monomials / Dirichlet indices).
  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  friend bool operator==(const MultiIndex& a, const MultiIndex& b) {
    return a.entries_ == b.entries_;
  }
  friend std::strong_ordering operator<=>(const MultiIndex& a,
                                          const MultiIndex& b);

 private:
  Storage entries_;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& a) const { return a.hash(); }
};

}  // namespace bohrlab

#endif  // BOHRLAB_SERIES_MULTI_INDEX_H_
