#pragma once

#include <vector>

#include "schelling/game.hpp"

namespace schelling::detail {

// Per-node fractions and score keys for one profile. Profitability of any
// pair then costs O(1) through the partner-fraction identity, so scanning
// all pairs is O(n^2) after an O(n * n/64) setup.
class SwapScan {
 public:
  SwapScan(const GameSpec& game, const NodeSet& blue) : game_(game), blue_(blue) { refresh(); }
  SwapScan(const GameSpec& game, const Profile& p) : SwapScan(game, p.blue()) {}

  void refresh() {
    const std::size_t n = game_.n();
    frac_.resize(n);
    key_.resize(n);
    for (Node v = 0; v < n; ++v) {
      const NodeSet& closed = game_.graph().closed_neighborhood(v);
      const auto size = static_cast<std::int64_t>(closed.size());
      const auto blue = static_cast<std::int64_t>(closed.intersection_size(blue_));
      frac_[v] = {blue_.contains(v) ? blue : size - blue, size};
      key_[v] = game_.score_key(frac_[v]);
    }
  }

  const Fraction& fraction(Node v) const { return frac_[v]; }
  bool segregated(Node v) const { return frac_[v].segregated(); }
  int key(Node v) const { return key_[v]; }

  bool profitable(Node u, Node v) const {
    if (blue_.contains(u) == blue_.contains(v)) return false;
    const bool adjacent = game_.graph().has_edge(u, v);
    // The agent leaving u lands on v and vice versa.
    if (game_.score_key(predicted_swap_fraction(frac_[v], adjacent)) <= key_[u]) return false;
    return game_.score_key(predicted_swap_fraction(frac_[u], adjacent)) > key_[v];
  }

 private:
  const GameSpec& game_;
  const NodeSet& blue_;
  std::vector<Fraction> frac_;
  std::vector<int> key_;
};

}  // namespace schelling::detail
