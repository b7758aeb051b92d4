#include "schelling/combinatorics.hpp"

#include "schelling/errors.hpp"

namespace schelling {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  unsigned __int128 acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // acc * (n - k + i) / i stays integral at every step.
    acc = acc * (n - k + i) / i;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t colex_rank(std::span<const Node> sorted_subset) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < sorted_subset.size(); ++i) rank += binomial(sorted_subset[i], i + 1);
  return rank;
}

std::vector<Node> colex_unrank(std::uint64_t rank, std::size_t k) {
  std::vector<Node> out(k);
  for (std::size_t i = k; i-- > 0;) {
    // Largest c with C(c, i+1) <= rank.
    std::uint64_t c = i;
    while (binomial(c + 1, i + 1) <= rank) ++c;
    out[i] = static_cast<Node>(c);
    rank -= binomial(c, i + 1);
  }
  return out;
}

}  // namespace schelling
