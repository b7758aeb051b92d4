#include "schelling/gallery.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "schelling/analysis.hpp"
#include "schelling/combinatorics.hpp"
#include "schelling/errors.hpp"
#include "schelling/rng.hpp"

namespace schelling {

namespace {

void require(bool ok, const char* guard, const std::string& what) {
  if (!ok) throw PreconditionViolation(guard, what);
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

NamedInstance make(std::string name, std::map<std::string, std::string> params, GameSpec game) {
  return NamedInstance{std::move(name), std::move(params), std::move(game), {}, {}};
}

Profile blues(const GameSpec& game, const std::vector<Node>& nodes) {
  Profile p = Profile::from_blue(game.n(), nodes);
  game.validate(p);
  return p;
}

bool is_cubic(const Graph& g) {
  const auto d = degree_profile(g);
  return g.n() > 0 && d.regular && d.max_degree == 3;
}

// Pairs degree stubs at random, rejecting loops and repeated edges, and
// restarts on dead ends or disconnected results.
Graph random_with_degrees(const std::vector<std::size_t>& degree, Rng& rng, const char* what) {
  const std::size_t n = degree.size();
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<Node> stubs;
    for (Node v = 0; v < n; ++v) stubs.insert(stubs.end(), degree[v], v);
    std::set<Edge> edges;
    bool stuck = false;
    while (!stubs.empty() && !stuck) {
      stuck = true;
      for (int tries = 0; tries < 200; ++tries) {
        const std::size_t i = rng.below(stubs.size()), j = rng.below(stubs.size());
        const Node a = stubs[i], b = stubs[j];
        if (a == b || edges.count({std::min(a, b), std::max(a, b)})) continue;
        edges.insert({std::min(a, b), std::max(a, b)});
        stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(std::max(i, j)));
        stubs.erase(stubs.begin() + static_cast<std::ptrdiff_t>(std::min(i, j)));
        stuck = false;
        break;
      }
    }
    if (stuck) continue;
    std::vector<Edge> list(edges.begin(), edges.end());
    Graph g(n, list);
    if (g.is_connected()) return g;
  }
  throw InvalidInput(std::string("could not draw a connected simple ") + what + " graph");
}

}  // namespace

// ---- stock graphs ----

Graph ring_graph(std::size_t n) {
  require(n >= 3, "ring-size", "ring needs at least 3 nodes");
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i) e.emplace_back(i, static_cast<Node>((i + 1) % n));
  return Graph(n, e);
}

Graph path_graph(std::size_t n) {
  require(n >= 1, "path-size", "path needs at least one node");
  std::vector<Edge> e;
  for (Node i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph star_graph(std::size_t leaves) {
  std::vector<Edge> e;
  for (Node i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

Graph complete_graph(std::size_t n) {
  std::vector<Edge> e;
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

Graph complete_bipartite_graph(std::size_t a, std::size_t b) {
  std::vector<Edge> e;
  for (Node i = 0; i < a; ++i)
    for (Node j = 0; j < b; ++j) e.emplace_back(i, static_cast<Node>(a + j));
  return Graph(a + b, e);
}

Graph grid_graph(std::size_t rows, std::size_t cols) {
  std::vector<Edge> e;
  const auto id = [&](std::size_t r, std::size_t c) { return static_cast<Node>(r * cols + c); };
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) e.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) e.emplace_back(id(r, c), id(r + 1, c));
    }
  return Graph(rows * cols, e);
}

Graph hypercube_graph(std::size_t dim) {
  require(dim <= 16, "hypercube-dimension", "dimension above 16");
  const std::size_t n = std::size_t{1} << dim;
  std::vector<Edge> e;
  for (Node v = 0; v < n; ++v)
    for (std::size_t bit = 0; bit < dim; ++bit) {
      const Node w = v ^ (Node{1} << bit);
      if (v < w) e.emplace_back(v, w);
    }
  return Graph(n, e);
}

Graph circulant_graph(std::size_t n, const std::vector<std::size_t>& offsets) {
  std::set<Edge> e;
  for (std::size_t s : offsets) {
    require(s >= 1 && s <= n / 2, "circulant-offset", "offset " + std::to_string(s) + " outside 1..n/2");
    for (Node i = 0; i < n; ++i) {
      const Node j = static_cast<Node>((i + s) % n);
      e.insert({std::min(i, j), std::max(i, j)});
    }
  }
  std::vector<Edge> list(e.begin(), e.end());
  return Graph(n, list);
}

Graph petersen_graph() {
  std::vector<Edge> e;
  for (Node i = 0; i < 5; ++i) {
    e.emplace_back(i, (i + 1) % 5);
    e.emplace_back(i, i + 5);
    e.emplace_back(i + 5, (i + 2) % 5 + 5);
  }
  for (auto& [u, v] : e)
    if (u > v) std::swap(u, v);
  return Graph(10, e);
}

Graph random_regular_graph(std::size_t n, std::size_t degree, std::uint64_t seed) {
  require(degree >= 1 && degree < n, "degree-range", "degree must lie in 1..n-1");
  require(n * degree % 2 == 0, "degree-parity", "n * degree must be even");
  if (degree == n - 1) return complete_graph(n);
  require(degree >= 2 || n == 2, "connected-regular", "a connected 1-regular graph has two nodes");
  Rng rng(seed);
  return random_with_degrees(std::vector<std::size_t>(n, degree), rng, "regular");
}

Graph random_almost_regular_graph(std::size_t n, std::size_t degree, std::uint64_t seed) {
  require(degree >= 1 && degree < n, "degree-range", "degree must lie in 1..n-1");
  Rng rng(seed);
  std::size_t high = degree + 1 < n ? rng.below(n + 1) : 0;
  if ((n * degree + high) % 2 == 1) high = high == n ? high - 1 : high + 1;
  require((n * degree + high) % 2 == 0, "degree-parity", "no degree sequence with even sum");
  if (degree == 1 && high == 0 && n > 2) high = n % 2 == 0 ? 2 : 1;  // a perfect matching is disconnected
  std::vector<Node> order(n);
  std::iota(order.begin(), order.end(), Node{0});
  rng.shuffle(order);
  std::vector<std::size_t> deg(n, degree);
  for (std::size_t i = 0; i < high; ++i) deg[order[i]] = degree + 1;
  if (degree == n - 1) return complete_graph(n);
  return random_with_degrees(deg, rng, "almost-regular");
}

Graph random_tree(std::size_t n, std::uint64_t seed) {
  require(n >= 1, "tree-size", "tree needs at least one node");
  Rng rng(seed);
  std::vector<Node> label(n);
  std::iota(label.begin(), label.end(), Node{0});
  rng.shuffle(label);
  std::vector<Edge> e;
  for (Node i = 1; i < n; ++i) {
    const Node a = label[i], b = label[rng.below(i)];
    e.emplace_back(std::min(a, b), std::max(a, b));
  }
  return Graph(n, e);
}

Graph random_connected_graph(std::size_t n, std::size_t extra_edges, std::uint64_t seed) {
  Graph tree = random_tree(n, seed);
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<Edge> e = tree.edges();
  std::vector<Edge> missing;
  for (Node u = 0; u < n; ++u)
    for (Node v = u + 1; v < n; ++v)
      if (!tree.has_edge(u, v)) missing.emplace_back(u, v);
  rng.shuffle(missing);
  missing.resize(std::min(missing.size(), extra_edges));
  e.insert(e.end(), missing.begin(), missing.end());
  return Graph(n, e);
}

Graph stock_graph(const std::string& kind, const std::map<std::string, std::string>& params, std::uint64_t seed) {
  const auto num = [&](const char* key) -> std::size_t {
    const auto it = params.find(key);
    if (it == params.end()) throw InvalidInput("graph kind '" + kind + "' needs parameter '" + key + "'");
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(it->second, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != it->second.size()) throw InvalidInput("parameter '" + std::string(key) + "' must be an integer");
    return v;
  };
  if (kind == "ring") return ring_graph(num("n"));
  if (kind == "path") return path_graph(num("n"));
  if (kind == "star") return star_graph(num("n") - 1);
  if (kind == "clique") return complete_graph(num("n"));
  if (kind == "complete-bipartite") return complete_bipartite_graph(num("a"), num("b"));
  if (kind == "grid") return grid_graph(num("rows"), num("cols"));
  if (kind == "hypercube") return hypercube_graph(num("dim"));
  if (kind == "petersen") return petersen_graph();
  if (kind == "circulant") {
    const auto it = params.find("offsets");
    if (it == params.end()) throw InvalidInput("circulant needs parameter 'offsets'");
    std::vector<std::size_t> offsets;
    std::stringstream ss(it->second);
    for (std::string part; std::getline(ss, part, ',');) offsets.push_back(std::stoul(part));
    return circulant_graph(num("n"), offsets);
  }
  if (kind == "random-regular") return random_regular_graph(num("n"), num("d"), seed);
  if (kind == "random-almost-regular") return random_almost_regular_graph(num("n"), num("d"), seed);
  if (kind == "random-tree") return random_tree(num("n"), seed);
  if (kind == "random-connected") return random_connected_graph(num("n"), num("extra"), seed);
  throw InvalidInput("unknown graph kind '" + kind + "'");
}

// ---- extremal instances ----

NamedInstance no_se_ring(const Lambda& lambda) {
  require(lambda.value() > Rational(1, 2), "lambda-above-half", "the six-ring argument needs Lambda > 1/2");
  auto inst = make("no-se-ring", {{"lambda", lambda.to_string()}}, GameSpec(ring_graph(6), 3, lambda));
  inst.profiles.emplace("start", blues(inst.game, {0, 1, 2}));
  inst.expected["se_exists"] = false;
  return inst;
}

NamedInstance poa_ring_instance(std::size_t b, const Lambda& lambda) {
  require(b >= 2 && b % 2 == 0, "b-even", "b must be even and at least 2");
  require(lambda.value() <= Rational(1, 2), "lambda-at-most-half", "needs Lambda <= 1/2");
  const std::size_t n = 3 * b;
  auto inst = make("poa-ring", {{"b", std::to_string(b)}, {"lambda", lambda.to_string()}},
                   GameSpec(ring_graph(n), b, lambda));
  std::vector<Node> bad, opt;
  const bool at_half = lambda.value() == Rational(1, 2);
  for (std::size_t t = 0; t < b; ++t) {
    // BBR blocks at the peak 1/2, BR alternation below it.
    bad.push_back(static_cast<Node>(at_half ? 3 * (t / 2) + t % 2 : 2 * t));
    opt.push_back(static_cast<Node>(3 * t + 1));
  }
  inst.profiles.emplace("bad_se", blues(inst.game, bad));
  inst.profiles.emplace("optimum", blues(inst.game, opt));
  inst.expected["bad_se_doi"] = at_half ? as_int(3 * b / 2 + 1) : as_int(2 * b + 1);
  inst.expected["bad_se_is_se"] = true;
  inst.expected["optimum_doi"] = as_int(3 * b);
  return inst;
}

NamedInstance poa_regular_instance(std::size_t delta, std::size_t lower_nodes, const Lambda& lambda) {
  require(delta >= 2, "delta-at-least-two", "needs delta >= 2");
  require(lambda.value() <= Rational(1, 2), "lambda-at-most-half", "needs Lambda <= 1/2");
  require(lower_nodes > delta, "lower-gadget-size", "lower gadget needs more than delta nodes");
  require(delta % 2 == 0 || lower_nodes % 2 == 0, "lower-gadget-parity",
          "odd delta needs an even lower gadget");

  // Ids: left l_1..l_delta, r_1..r_delta; upper clique u_1..u_{delta-1};
  // ports sL, sR; then the lower circulant with a = first, c = second node.
  const Node left = 0, right = static_cast<Node>(delta), upper = static_cast<Node>(2 * delta);
  const Node sL = static_cast<Node>(3 * delta - 1), sR = sL + 1, lower = sR + 1;
  const std::size_t n = lower + lower_nodes;
  std::vector<Edge> e;
  for (Node i = 0; i < delta; ++i)
    for (Node j = 0; j < delta; ++j)
      if (i + 1 != delta || j + 1 != delta) e.emplace_back(left + i, right + j);
  for (Node i = 0; i + 1 < delta; ++i) {
    for (Node j = i + 1; j + 1 < delta; ++j) e.emplace_back(upper + i, upper + j);
    e.emplace_back(upper + i, sL);
    e.emplace_back(upper + i, sR);
  }
  e.emplace_back(left + static_cast<Node>(delta) - 1, sL);
  std::vector<std::size_t> offsets;
  for (std::size_t s = 1; s <= delta / 2; ++s) offsets.push_back(s);
  if (delta % 2 == 1) offsets.push_back(lower_nodes / 2);
  const Graph circ = circulant_graph(lower_nodes, offsets);
  require(degree_profile(circ).regular && degree_profile(circ).max_degree == delta, "lower-gadget-regular",
          "lower gadget is not delta-regular for these sizes");
  for (auto [u, v] : circ.edges())
    if (!(u == 0 && v == 1)) e.emplace_back(lower + u, lower + v);
  const Node a = lower, c = lower + 1;
  e.emplace_back(right + static_cast<Node>(delta) - 1, a);
  e.emplace_back(sR, c);
  for (auto& [u, v] : e)
    if (u > v) std::swap(u, v);
  Graph g(n, e);
  const auto deg = degree_profile(g);
  if (!deg.regular || deg.max_degree != delta) throw AssertionFailure("gadget graph is not delta-regular");

  auto inst = make("poa-regular",
                   {{"delta", std::to_string(delta)}, {"lower_nodes", std::to_string(lower_nodes)},
                    {"lambda", lambda.to_string()}},
                   GameSpec(std::move(g), delta, lambda));
  const Graph& gg = inst.game.graph();

  std::vector<Node> bad;
  for (Node i = 0; i < delta; ++i) bad.push_back(left + i);
  // Lower-gadget nodes with pairwise disjoint closed neighborhoods.
  std::vector<Node> opt;
  NodeSet covered(n);
  for (Node v = lower; v < n && opt.size() < delta; ++v) {
    if (gg.closed_neighborhood(v).intersects(covered)) continue;
    opt.push_back(v);
    covered |= gg.closed_neighborhood(v);
  }
  require(opt.size() == delta, "lower-gadget-packing",
          "lower gadget too small for delta disjoint closed neighborhoods");
  inst.profiles.emplace("bad_se", blues(inst.game, bad));
  inst.profiles.emplace("optimum", blues(inst.game, opt));
  inst.expected["bad_se_doi"] = as_int(2 * delta + 1);
  inst.expected["bad_se_is_se"] = true;
  inst.expected["optimum_doi"] = as_int(delta * (delta + 1));
  inst.expected["poa_lower_bound"] = Rational(as_int(delta * (delta + 1)), as_int(2 * delta + 1));

  const Profile& p = inst.profiles.at("bad_se");
  if (doi(gg, p) != 2 * delta + 1)
    throw AssertionFailure("poor profile has doi " + std::to_string(doi(gg, p)) + ", expected 2 delta + 1");
  if (!is_swap_equilibrium(inst.game, p).is_se) throw AssertionFailure("poor profile is not an equilibrium");
  if (doi(gg, inst.profiles.at("optimum")) != delta * (delta + 1))
    throw AssertionFailure("packed profile does not reach delta (delta + 1)");
  return inst;
}

NamedInstance pos_general_instance(std::size_t q, std::size_t b, const Lambda& lambda) {
  require(q >= 2, "q-at-least-two", "needs q >= 2");
  require(b >= 1, "b-positive", "needs b >= 1");
  require(lambda.value() >= Rational(1, as_int(q)) && lambda.value() < Rational(1, as_int(q - 1)), "lambda-window",
          "needs 1/q <= Lambda < 1/(q-1)");
  // Per clique node i: k_i, then its (q-1)b leaves, then the star: the leaf
  // attached to k_i, the center, and the other q-2 leaves.
  const std::size_t leaves = (q - 1) * b;
  std::vector<Edge> e;
  std::vector<Node> clique(b), center(b);
  Node next = static_cast<Node>(b);
  for (Node i = 0; i < b; ++i) clique[i] = i;
  for (Node i = 0; i < b; ++i)
    for (Node j = i + 1; j < b; ++j) e.emplace_back(i, j);
  for (Node i = 0; i < b; ++i) {
    for (std::size_t l = 0; l < leaves; ++l) e.emplace_back(i, next++);
    const Node attach = next++, mid = next++;
    center[i] = mid;
    e.emplace_back(i, attach);
    e.emplace_back(attach, mid);
    for (std::size_t l = 0; l + 2 < q; ++l) e.emplace_back(mid, next++);
  }
  const std::size_t n = next;
  auto inst = make("pos-general", {{"q", std::to_string(q)}, {"b", std::to_string(b)}, {"lambda", lambda.to_string()}},
                   GameSpec(Graph(n, e), b, lambda));
  std::vector<Node> modest{clique[0]};
  for (std::size_t i = 1; i < b; ++i) modest.push_back(center[i]);
  inst.profiles.emplace("optimum", blues(inst.game, clique));
  inst.profiles.emplace("modest_se", blues(inst.game, modest));
  inst.expected["n"] = as_int((q - 1) * b * b + b + b * q);
  inst.expected["optimum_doi"] = as_int((q - 1) * b * b + 2 * b);
  inst.expected["modest_se_doi"] = as_int((q - 1) * b + b + 1 + (b - 1) * q);
  inst.expected["modest_se_is_se"] = true;
  inst.expected["max_clique_blues_in_se"] = std::int64_t{1};
  return inst;
}

NamedInstance pos_bipartite_instance(std::size_t b) {
  require(b >= 2 && b % 2 == 0, "b-even", "b must be even and at least 2");
  // Base p_i = i; then per base node its 2(b-1) leaves and the pendant path
  // d_i^1, d_i^2.
  std::vector<Edge> e;
  std::vector<Node> d2(b);
  Node next = static_cast<Node>(b);
  for (Node i = 0; i + 1 < b; ++i) e.emplace_back(i, i + 1);
  for (Node i = 0; i < b; ++i) {
    for (std::size_t l = 0; l < 2 * (b - 1); ++l) e.emplace_back(i, next++);
    const Node first = next++, second = next++;
    e.emplace_back(i, first);
    e.emplace_back(first, second);
    d2[i] = second;
  }
  auto inst = make("pos-bipartite", {{"b", std::to_string(b)}},
                   GameSpec(Graph(next, e), b, Lambda(1, 2)));
  std::vector<Node> base(b), best;
  std::iota(base.begin(), base.end(), Node{0});
  for (Node i = 0; i < b; ++i) best.push_back(i % 2 == 0 ? i : d2[i]);
  std::sort(best.begin(), best.end());
  inst.profiles.emplace("optimum", blues(inst.game, base));
  inst.profiles.emplace("best_se", blues(inst.game, best));
  inst.expected["optimum_doi"] = as_int(2 * (b - 1) * b + 2 * b);
  inst.expected["optimum_is_se"] = false;
  inst.expected["best_se_doi"] = Rational(as_int(2 * b * (b - 1) + 5 * b), 2);
  inst.expected["best_se_is_se"] = true;
  return inst;
}

std::optional<std::vector<Node>> dominating_set_with_private_outside(const Graph& g, std::size_t k) {
  const std::size_t n = g.n();
  std::optional<std::vector<Node>> found;
  if (k == 0 || k > n) return found;
  for_each_subset(n, k, 0, binomial(n, k), [&](std::uint64_t, const std::vector<Node>& s, const NodeSet& set) {
    if (found) return;
    for (Node v = 0; v < n; ++v) {
      const std::size_t in = g.closed_neighborhood(v).intersection_size(set);
      if (in == 0 || in == g.closed_neighborhood(v).size()) return;
    }
    found = s;
  });
  return found;
}

std::vector<Node> minimum_vertex_cover(const Graph& g) {
  const std::size_t n = g.n();
  const auto edges = g.edges();
  for (std::size_t k = 0; k <= n; ++k) {
    std::optional<std::vector<Node>> cover;
    for_each_subset(n, k, 0, binomial(n, k), [&](std::uint64_t, const std::vector<Node>& s, const NodeSet& set) {
      if (cover) return;
      for (auto [u, v] : edges)
        if (!set.contains(u) && !set.contains(v)) return;
      cover = s;
    });
    if (cover) return *cover;
  }
  return {};
}

NamedInstance dominating_set_reduction(const Graph& cubic, std::size_t k, const Lambda& lambda) {
  require(is_cubic(cubic), "graph-cubic", "dominating-set reduction needs a cubic graph");
  auto inst = make("dominating-set-reduction", {{"k", std::to_string(k)}, {"lambda", lambda.to_string()}},
                   GameSpec(cubic, k, lambda));
  const auto witness = dominating_set_with_private_outside(cubic, k);
  if (witness) inst.profiles.emplace("witness", blues(inst.game, *witness));
  inst.expected["full_integration"] = witness.has_value();
  return inst;
}

NamedInstance vertex_cover_reduction(const Graph& cubic, const Lambda& lambda, std::optional<std::vector<Node>> cover) {
  require(is_cubic(cubic), "graph-cubic", "vertex-cover reduction needs a cubic graph");
  require(lambda.value() <= Rational(1, 2), "lambda-at-most-half", "needs Lambda <= 1/2");
  const auto edges = cubic.edges();
  if (cover) {
    NodeSet set(cubic.n());
    for (Node v : *cover) {
      require(v < cubic.n(), "cover-range", "cover node out of range");
      set.insert(v);
    }
    for (auto [u, v] : edges)
      require(set.contains(u) || set.contains(v), "cover-valid", "supplied set is not a vertex cover");
    cover = set.to_vector();
  } else {
    cover = minimum_vertex_cover(cubic);
  }
  const std::size_t n1 = cubic.n(), m1 = edges.size();
  // Ids: x_v = v; y_e^1, y_e^2 = n' + 2e, n' + 2e + 1; z; then dummies.
  const Node z = static_cast<Node>(n1 + 2 * m1);
  const std::size_t n = n1 + 7 * m1 + 1;
  std::vector<Edge> e;
  for (std::size_t i = 0; i < m1; ++i) {
    const Node y1 = static_cast<Node>(n1 + 2 * i), y2 = y1 + 1;
    for (Node end : {edges[i].first, edges[i].second}) {
      e.emplace_back(end, y1);
      e.emplace_back(end, y2);
    }
  }
  for (Node v = 0; v < n1; ++v) e.emplace_back(v, z);
  for (Node d = z + 1; d < n; ++d) e.emplace_back(z, d);
  const std::size_t k_star = cover->size();
  auto inst = make("vertex-cover-reduction", {{"k_star", std::to_string(k_star)}, {"lambda", lambda.to_string()}},
                   GameSpec(Graph(n, e), k_star + 1, lambda));
  std::vector<Node> blue = *cover;
  blue.push_back(z);
  inst.profiles.emplace("cover_optimum", blues(inst.game, blue));
  inst.expected["n"] = as_int(n);
  inst.expected["b"] = as_int(k_star + 1);
  inst.expected["cover_optimum_doi"] = as_int(n);
  inst.expected["cover_optimum_is_se"] = true;
  inst.expected["z_fraction_below_sixth"] = true;
  return inst;
}

}  // namespace schelling
