#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "schelling/node_set.hpp"

namespace schelling {

inline constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

// C(n, k), saturating at kSaturated.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

// Colexicographic rank of a sorted k-subset {c_0 < ... < c_{k-1}}:
// sum_i C(c_i, i + 1).
std::uint64_t colex_rank(std::span<const Node> sorted_subset);

// Inverse of colex_rank for subsets of size k.
std::vector<Node> colex_unrank(std::uint64_t rank, std::size_t k);

// Advances a sorted k-subset of {0..n-1} to its colex successor, keeping
// `members` (when given) in sync. Returns false, leaving everything
// unchanged, at the last subset.
inline bool next_colex(std::vector<Node>& subset, std::size_t n, NodeSet* members = nullptr) {
  const std::size_t k = subset.size();
  std::size_t i = 0;
  while (i < k) {
    const std::size_t limit = i + 1 < k ? subset[i + 1] : n;
    if (subset[i] + 1 < limit) break;
    ++i;
  }
  if (i == k) return false;
  if (members)
    for (std::size_t j = 0; j <= i; ++j) members->erase(subset[j]);
  ++subset[i];
  for (std::size_t j = 0; j < i; ++j) subset[j] = static_cast<Node>(j);
  if (members)
    for (std::size_t j = 0; j <= i; ++j) members->insert(subset[j]);
  return true;
}

// Visits every k-subset of {0..n-1} with colex rank in [begin, end), in
// order. The callback receives the rank, the sorted members and a NodeSet
// that is updated in place between calls.
template <class F>
void for_each_subset(std::size_t n, std::size_t k, std::uint64_t begin, std::uint64_t end, F&& f) {
  if (begin >= end) return;
  std::vector<Node> subset = colex_unrank(begin, k);
  NodeSet members(n, subset);
  for (std::uint64_t rank = begin;; ++rank) {
    f(rank, static_cast<const std::vector<Node>&>(subset), static_cast<const NodeSet&>(members));
    if (rank + 1 == end || !next_colex(subset, n, &members)) break;
  }
}

}  // namespace schelling
