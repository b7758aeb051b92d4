#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "schelling/node_set.hpp"

namespace schelling {

using Edge = std::pair<Node, Node>;

// Simple undirected graph on nodes 0..n-1. Immutable after construction.
// Connectivity is not a class invariant: induced views may be disconnected;
// GameSpec enforces it for game graphs.
class Graph {
 public:
  Graph() = default;

  // Throws InvalidInput on self-loops, duplicate edges or out-of-range ids.
  Graph(std::size_t n, std::span<const Edge> edges);
  Graph(std::size_t n, std::initializer_list<Edge> edges)
      : Graph(n, std::span<const Edge>(edges.begin(), edges.size())) {}

  std::size_t n() const noexcept { return adjacency_.size(); }
  std::size_t m() const noexcept { return m_; }

  std::size_t degree(Node v) const { return adjacency_.at(v).size(); }
  std::span<const Node> neighbors(Node v) const { return adjacency_.at(v); }
  bool has_edge(Node u, Node v) const { return u < n() && v < n() && closed_[u].contains(v) && u != v; }

  // {v} together with its neighbors; throws InvalidInput for v >= n.
  const NodeSet& closed_neighborhood(Node v) const;

  // Edges with u < v in lexicographic order.
  std::vector<Edge> edges() const;

  bool is_connected() const;

 private:
  std::vector<std::vector<Node>> adjacency_;
  std::vector<NodeSet> closed_;
  std::size_t m_ = 0;
};

struct DegreeProfile {
  std::size_t min_degree = 0;
  std::size_t max_degree = 0;
  bool regular = false;
  bool almost_regular = false;
};

DegreeProfile degree_profile(const Graph& g);

// Sorted list of the distinct node degrees occurring in g.
std::vector<std::size_t> distinct_degrees(const Graph& g);

struct Bipartition {
  std::vector<Node> smaller;  // V1, |V1| <= |V2|
  std::vector<Node> larger;   // V2
};

// 2-coloring classes when g is bipartite. For disconnected graphs each
// component's smallest node is placed on the first side before balancing.
std::optional<Bipartition> bipartition(const Graph& g);

bool is_independent(const Graph& g, const NodeSet& s);

struct IndependenceResult {
  std::size_t size = 0;
  NodeSet witness;
  std::uint64_t expansions = 0;
};

inline constexpr std::uint64_t kDefaultAlphaBudget = 50'000'000;

// Exact maximum independent set by branch and bound. Practical up to about
// 40 nodes on sparse graphs. Throws BudgetExceeded after `expansion_budget`
// search nodes rather than returning an approximation.
IndependenceResult independence_number(const Graph& g,
                                       std::uint64_t expansion_budget = kDefaultAlphaBudget);

struct InducedSubgraph {
  Graph graph;                    // relabelled to 0..|U|-1 in increasing id order
  std::vector<Node> original_id;  // local id -> id in the parent graph
};

InducedSubgraph induced_subgraph(const Graph& g, const NodeSet& nodes);

}  // namespace schelling
