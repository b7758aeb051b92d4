#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "schelling/game.hpp"

namespace schelling {

using ExpectedValue = std::variant<bool, std::int64_t, Rational>;

// A generated game with its distinguished profiles and the quantities the
// construction promises. Expected values are claims to re-verify, not facts.
struct NamedInstance {
  std::string name;
  std::map<std::string, std::string> params;
  GameSpec game;
  std::map<std::string, Profile> profiles;
  std::map<std::string, ExpectedValue> expected;
};

// Ring of six with b = 3; requires Lambda > 1/2.
NamedInstance no_se_ring(const Lambda& lambda);

// Ring of 3b nodes, b even, Lambda <= 1/2, with a poor equilibrium and the
// optimum.
NamedInstance poa_ring_instance(std::size_t b, const Lambda& lambda);

// delta-regular graph from three gadgets whose worst equilibrium keeps
// 2 delta + 1 agents integrated against delta (delta + 1) at the optimum.
// `lower_nodes` sizes the circulant gadget (even when delta is odd).
// The poor profile is checked on generation; AssertionFailure on mismatch.
NamedInstance poa_regular_instance(std::size_t delta, std::size_t lower_nodes,
                                   const Lambda& lambda = Lambda(1, 2));

// Clique K_b with leaves and appended stars; requires 1/q <= Lambda < 1/(q-1).
NamedInstance pos_general_instance(std::size_t q, std::size_t b, const Lambda& lambda);

// Base path of b nodes with leaves and pendant paths; b even, Lambda = 1/2.
NamedInstance pos_bipartite_instance(std::size_t b);

// The game (g, k, Lambda) on a cubic graph. Full integration is possible iff
// some size-k dominating set has every member adjacent to a non-member; the
// generator decides that by brute force.
NamedInstance dominating_set_reduction(const Graph& cubic, std::size_t k, const Lambda& lambda);

// Bipartite blow-up of a cubic graph with b = k* + 1. Without `cover` a
// minimum vertex cover is computed exactly (practical for n' <= 16).
NamedInstance vertex_cover_reduction(const Graph& cubic, const Lambda& lambda,
                                     std::optional<std::vector<Node>> cover = std::nullopt);

// Exact small solvers used by the reduction generators.
std::vector<Node> minimum_vertex_cover(const Graph& g);
std::optional<std::vector<Node>> dominating_set_with_private_outside(const Graph& g, std::size_t k);

// Stock graphs.
Graph ring_graph(std::size_t n);
Graph path_graph(std::size_t n);
Graph star_graph(std::size_t leaves);
Graph complete_graph(std::size_t n);
Graph complete_bipartite_graph(std::size_t a, std::size_t b);
Graph grid_graph(std::size_t rows, std::size_t cols);
Graph hypercube_graph(std::size_t dim);
Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& offsets);
Graph petersen_graph();
// Simple connected graphs drawn by the configuration model with retries.
Graph random_regular_graph(std::size_t n, std::size_t degree, std::uint64_t seed);
// Every degree is `degree` or `degree + 1`.
Graph random_almost_regular_graph(std::size_t n, std::size_t degree, std::uint64_t seed);
Graph random_tree(std::size_t n, std::uint64_t seed);
// Random tree plus `extra_edges` distinct random edges.
Graph random_connected_graph(std::size_t n, std::size_t extra_edges, std::uint64_t seed);

// Dispatch by name: ring, path, star, clique, complete-bipartite, grid,
// hypercube, circulant, petersen, random-regular, random-almost-regular,
// random-tree, random-connected. Parameters by key (n, d, a, b, rows, cols,
// dim, offsets as "1,2", extra).
Graph stock_graph(const std::string& kind, const std::map<std::string, std::string>& params, std::uint64_t seed);

}  // namespace schelling
