#pragma once

// Deterministic families of small connected graphs shared by the unit and
// acceptance tests.

#include <string>
#include <vector>

#include "schelling/game.hpp"
#include "schelling/gallery.hpp"

namespace corpus {

using schelling::Graph;
using schelling::Lambda;

struct NamedGraph {
  std::string name;
  Graph graph;
};

inline std::vector<NamedGraph> graphs(std::size_t max_n) {
  using namespace schelling;
  std::vector<NamedGraph> out;
  const auto add = [&](std::string name, Graph g) {
    if (g.n() >= 2 && g.n() <= max_n) out.push_back({std::move(name), std::move(g)});
  };
  for (std::size_t n = 3; n <= max_n; ++n) add("ring" + std::to_string(n), ring_graph(n));
  for (std::size_t n = 2; n <= max_n; ++n) add("path" + std::to_string(n), path_graph(n));
  for (std::size_t l = 2; l + 1 <= max_n; ++l) add("star" + std::to_string(l), star_graph(l));
  for (std::size_t n = 3; n <= std::min<std::size_t>(max_n, 7); ++n) add("clique" + std::to_string(n), complete_graph(n));
  for (std::size_t a = 1; a <= 4; ++a)
    for (std::size_t b = std::max<std::size_t>(a, 2); a + b <= max_n; ++b)
      add("k" + std::to_string(a) + "," + std::to_string(b), complete_bipartite_graph(a, b));
  for (std::size_t r = 2; r <= 3; ++r)
    for (std::size_t c = r; r * c <= max_n; ++c)
      add("grid" + std::to_string(r) + "x" + std::to_string(c), grid_graph(r, c));
  add("q3", hypercube_graph(3));
  add("petersen", petersen_graph());
  add("circ8-12", circulant_graph(8, {1, 2}));
  add("circ9-13", circulant_graph(9, {1, 3}));
  add("circ10-12", circulant_graph(10, {1, 2}));
  add("circ12-15", circulant_graph(12, {1, 5}));
  add("circ12-123", circulant_graph(12, {1, 2, 3}));
  std::uint64_t seed = 11;
  for (std::size_t n : {6, 8, 10, 12}) {
    add("reg3-" + std::to_string(n), random_regular_graph(n, 3, seed++));
    add("reg4-" + std::to_string(n), random_regular_graph(n, 4, seed++));
  }
  for (std::size_t n = 5; n <= max_n; ++n)
    for (std::size_t d : {2, 3}) add("almost" + std::to_string(d) + "-" + std::to_string(n),
                                     random_almost_regular_graph(n, d, seed++));
  for (std::size_t n = 4; n <= max_n; ++n) {
    add("tree" + std::to_string(n), random_tree(n, seed++));
    add("sparse" + std::to_string(n), random_connected_graph(n, n / 3, seed++));
    add("dense" + std::to_string(n), random_connected_graph(n, n, seed++));
  }
  return out;
}

inline const std::vector<Lambda>& lambdas() {
  static const std::vector<Lambda> all = {{1, 5}, {1, 4}, {1, 3}, {2, 5}, {1, 2}, {3, 5}, {2, 3}, {3, 4}};
  return all;
}

inline std::vector<Lambda> lambdas_at_most_half() {
  std::vector<Lambda> out;
  for (const auto& l : lambdas())
    if (l.value() <= schelling::Rational(1, 2)) out.push_back(l);
  return out;
}

}  // namespace corpus
