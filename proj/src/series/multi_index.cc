#include "bohrlab/series/multi_index.h"

#include <algorithm>
#include <sstream>

#include "bohrlab/error.h"

namespace bohrlab {

MultiIndex MultiIndex::from_entries(std::span<const IndexEntry> entries) {
  MultiIndex out;
  std::uint32_t last = 0;
  for (const auto& e : entries) {
    if (e.position == 0) throw InvalidInput("multi-index position must be >= 1");
    if (e.exponent == 0) throw InvalidInput("multi-index exponent must be >= 1");
    if (e.position <= last) {
      throw InvalidInput("multi-index positions must be strictly increasing");
    }
    last = e.position;
    out.entries_.push_back(e);
  }
  return out;
}

MultiIndex MultiIndex::from_pairs(
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs) {
  std::vector<IndexEntry> entries;
  entries.reserve(pairs.size());
  for (const auto& [pos, exp] : pairs) entries.push_back({pos, exp});
  return from_entries(entries);
}

MultiIndex MultiIndex::unit(std::uint32_t position, std::uint32_t exponent) {
  const IndexEntry e{position, exponent};
  return from_entries(std::span<const IndexEntry>(&e, 1));
}

std::uint32_t MultiIndex::degree() const {
  std::uint32_t total = 0;
  for (const auto& e : entries_) total += e.exponent;
  return total;
}

std::uint32_t MultiIndex::exponent_of(std::uint32_t position) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), position,
      [](const IndexEntry& e, std::uint32_t p) { return e.position < p; });
  return (it != entries_.end() && it->position == position) ? it->exponent : 0;
}

std::vector<std::uint32_t> MultiIndex::support() const {
  std::vector<std::uint32_t> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.position);
  return out;
}

std::size_t MultiIndex::hash() const {
  // FNV-1a over the (position, exponent) words.
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& e : entries_) {
    for (std::uint32_t word : {e.position, e.exponent}) {
      h ^= word;
      h *= 1099511628211ULL;
    }
  }
  return static_cast<std::size_t>(h);
}

std::string MultiIndex::to_string() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ',';
    os << '(' << entries_[i].position << ',' << entries_[i].exponent << ')';
  }
  os << '}';
  return os.str();
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex out;
  out.entries_.reserve(a.entries_.size() + b.entries_.size());
  auto i = a.entries_.begin();
  auto j = b.entries_.begin();
  while (i != a.entries_.end() && j != b.entries_.end()) {
    if (i->position < j->position) {
      out.entries_.push_back(*i++);
    } else if (j->position < i->position) {
      out.entries_.push_back(*j++);
    } else {
      out.entries_.push_back({i->position, i->exponent + j->exponent});
      ++i;
      ++j;
    }
  }
  out.entries_.insert(out.entries_.end(), i, a.entries_.end());
  out.entries_.insert(out.entries_.end(), j, b.entries_.end());
  return out;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) {
  return std::lexicographical_compare_three_way(
      a.entries_.begin(), a.entries_.end(), b.entries_.begin(),
      b.entries_.end());
}

}  // namespace bohrlab
