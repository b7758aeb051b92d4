#include "schelling/graph.hpp"

#include <algorithm>
#include <deque>
#include <string>

#include "schelling/errors.hpp"

namespace schelling {

Graph::Graph(std::size_t n, std::span<const Edge> edges) : adjacency_(n), closed_(n, NodeSet(n)) {
  for (Node v = 0; v < n; ++v) closed_[v].insert(v);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n)
      throw InvalidInput("edge (" + std::to_string(u) + "," + std::to_string(v) +
                         ") references a node outside 0.." + std::to_string(n == 0 ? 0 : n - 1));
    if (u == v) throw InvalidInput("self-loop at node " + std::to_string(u));
    if (closed_[u].contains(v))
      throw InvalidInput("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    closed_[u].insert(v);
    closed_[v].insert(u);
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
    ++m_;
  }
  for (auto& adj : adjacency_) std::sort(adj.begin(), adj.end());
}

const NodeSet& Graph::closed_neighborhood(Node v) const {
  if (v >= n()) throw InvalidInput("node " + std::to_string(v) + " out of range");
  return closed_[v];
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(m_);
  for (Node u = 0; u < n(); ++u)
    for (Node v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

bool Graph::is_connected() const {
  if (n() == 0) return false;
  std::vector<char> seen(n(), 0);
  std::vector<Node> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    Node u = stack.back();
    stack.pop_back();
    for (Node w : adjacency_[u])
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
  }
  return reached == n();
}

DegreeProfile degree_profile(const Graph& g) {
  DegreeProfile d;
  if (g.n() == 0) return d;
  d.min_degree = g.degree(0);
  d.max_degree = g.degree(0);
  for (Node v = 1; v < g.n(); ++v) {
    d.min_degree = std::min(d.min_degree, g.degree(v));
    d.max_degree = std::max(d.max_degree, g.degree(v));
  }
  d.regular = d.min_degree == d.max_degree;
  d.almost_regular = d.max_degree - d.min_degree <= 1;
  return d;
}

std::vector<std::size_t> distinct_degrees(const Graph& g) {
  std::vector<std::size_t> out;
  for (Node v = 0; v < g.n(); ++v) out.push_back(g.degree(v));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<Bipartition> bipartition(const Graph& g) {
  std::vector<int> side(g.n(), -1);
  for (Node s = 0; s < g.n(); ++s) {
    if (side[s] != -1) continue;
    side[s] = 0;
    std::deque<Node> queue{s};
    while (!queue.empty()) {
      Node u = queue.front();
      queue.pop_front();
      for (Node w : g.neighbors(u)) {
        if (side[w] == -1) {
          side[w] = 1 - side[u];
          queue.push_back(w);
        } else if (side[w] == side[u]) {
          return std::nullopt;
        }
      }
    }
  }
  Bipartition b;
  for (Node v = 0; v < g.n(); ++v) (side[v] == 0 ? b.smaller : b.larger).push_back(v);
  if (b.smaller.size() > b.larger.size()) std::swap(b.smaller, b.larger);
  return b;
}

bool is_independent(const Graph& g, const NodeSet& s) {
  bool ok = true;
  s.for_each([&](Node v) {
    if (!ok) return;
    for (Node w : g.neighbors(v))
      if (s.contains(w)) ok = false;
  });
  return ok;
}

namespace {

class IndependentSetSearch {
 public:
  IndependentSetSearch(const Graph& g, std::uint64_t budget) : g_(g), budget_(budget) {}

  IndependenceResult run() {
    best_ = greedy();
    NodeSet chosen(g_.n());
    search(NodeSet::full(g_.n()), chosen);
    return {best_.size(), best_, expansions_};
  }

 private:
  std::size_t degree_in(Node v, const NodeSet& pool) const {
    return g_.closed_neighborhood(v).intersection_size(pool) - 1;
  }

  // Minimum-degree greedy; a valid lower bound to start pruning from.
  NodeSet greedy() const {
    NodeSet pool = NodeSet::full(g_.n());
    NodeSet out(g_.n());
    while (!pool.empty()) {
      Node pick = 0;
      std::size_t best_deg = SIZE_MAX;
      pool.for_each([&](Node v) {
        std::size_t d = degree_in(v, pool);
        if (d < best_deg) {
          best_deg = d;
          pick = v;
        }
      });
      out.insert(pick);
      pool -= g_.closed_neighborhood(pick);
    }
    return out;
  }

  void search(NodeSet pool, NodeSet& chosen) {
    if (++expansions_ > budget_)
      throw BudgetExceeded("independence number search exceeded " + std::to_string(budget_) +
                           " expansions");
    std::vector<Node> forced;
    // Nodes of degree <= 1 in the pool belong to some maximum independent set.
    for (bool changed = true; changed;) {
      changed = false;
      std::optional<Node> low;
      pool.for_each([&](Node v) {
        if (!low && degree_in(v, pool) <= 1) low = v;
      });
      if (low) {
        forced.push_back(*low);
        chosen.insert(*low);
        pool -= g_.closed_neighborhood(*low);
        changed = true;
      }
    }

    if (pool.empty()) {
      if (chosen.size() > best_.size()) best_ = chosen;
    } else {
      std::size_t edge_ends = 0, max_deg = 0;
      Node branch = 0;
      pool.for_each([&](Node v) {
        std::size_t d = degree_in(v, pool);
        edge_ends += d;
        if (d > max_deg) {
          max_deg = d;
          branch = v;
        }
      });
      // Every vertex cover of G[pool] has at least m/Delta nodes.
      const std::size_t edges = edge_ends / 2;
      const std::size_t cover_lb = (edges + max_deg - 1) / max_deg;
      const std::size_t upper = chosen.size() + pool.size() - cover_lb;
      if (upper > best_.size()) {
        chosen.insert(branch);
        search(pool - g_.closed_neighborhood(branch), chosen);
        chosen.erase(branch);
        NodeSet without = pool;
        without.erase(branch);
        search(std::move(without), chosen);
      }
    }
    for (Node v : forced) chosen.erase(v);
  }

  const Graph& g_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  NodeSet best_;
};

}  // namespace

IndependenceResult independence_number(const Graph& g, std::uint64_t expansion_budget) {
  if (g.n() == 0) return {0, NodeSet(0), 0};
  return IndependentSetSearch(g, expansion_budget).run();
}

InducedSubgraph induced_subgraph(const Graph& g, const NodeSet& nodes) {
  InducedSubgraph out;
  out.original_id = nodes.to_vector();
  std::vector<Node> local(g.n(), static_cast<Node>(-1));
  for (Node i = 0; i < out.original_id.size(); ++i) local[out.original_id[i]] = i;
  std::vector<Edge> edges;
  for (Node i = 0; i < out.original_id.size(); ++i)
    for (Node w : g.neighbors(out.original_id[i]))
      if (nodes.contains(w) && local[w] > i) edges.emplace_back(i, local[w]);
  out.graph = Graph(out.original_id.size(), edges);
  return out;
}

}  // namespace schelling
