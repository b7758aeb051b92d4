#pragma once

// Brute-force reference implementations for the tests. Profiles are bit
// masks of blue nodes (n <= 64); nothing here shares code with the library's
// scan, enumeration or search paths.

#include <bit>
#include <cstdint>
#include <optional>
#include <vector>

#include "schelling/game.hpp"
#include "schelling/graph.hpp"

namespace oracle {

using schelling::Graph;
using schelling::Node;
using schelling::Rational;
using Mask = std::uint64_t;

inline bool blue(Mask m, Node v) { return (m >> v) & 1U; }

inline Mask mask_of(const schelling::Profile& p) {
  Mask m = 0;
  for (Node v : p.blue_nodes()) m |= Mask{1} << v;
  return m;
}

inline schelling::Profile profile_of(Mask m, std::size_t n) {
  std::vector<Node> nodes;
  for (Node v = 0; v < n; ++v)
    if (blue(m, v)) nodes.push_back(v);
  return schelling::Profile::from_blue(n, nodes);
}

struct Frac {
  std::int64_t x;
  std::int64_t y;
};

inline Frac fraction(const Graph& g, Mask m, Node v) {
  Frac f{1, 1};
  for (Node w : g.neighbors(v)) {
    ++f.y;
    if (blue(m, w) == blue(m, v)) ++f.x;
  }
  return f;
}

// Tent utility written straight from the model definition.
inline Rational utility(Frac f, const Rational& lambda) {
  const Rational r(f.x, f.y);
  if (r <= lambda) return r / lambda;
  return (Rational(1) - r) / (Rational(1) - lambda);
}

inline Mask swapped(Mask m, Node u, Node v) { return m ^ (Mask{1} << u) ^ (Mask{1} << v); }

inline bool profitable(const Graph& g, Mask m, const Rational& lambda, Node u, Node v) {
  if (blue(m, u) == blue(m, v)) return false;
  const Mask after = swapped(m, u, v);
  // The agent from u now sits at v and vice versa.
  return utility(fraction(g, after, v), lambda) > utility(fraction(g, m, u), lambda) &&
         utility(fraction(g, after, u), lambda) > utility(fraction(g, m, v), lambda);
}

inline bool is_se(const Graph& g, Mask m, const Rational& lambda) {
  for (Node u = 0; u < g.n(); ++u)
    for (Node v = u + 1; v < g.n(); ++v)
      if (profitable(g, m, lambda, u, v)) return false;
  return true;
}

inline std::size_t doi(const Graph& g, Mask m) {
  std::size_t d = 0;
  for (Node v = 0; v < g.n(); ++v) {
    const Frac f = fraction(g, m, v);
    if (f.x < f.y) ++d;
  }
  return d;
}

inline std::size_t phi(const Graph& g, Mask m) {
  std::size_t c = 0;
  for (auto [u, v] : g.edges())
    if (blue(m, u) == blue(m, v)) ++c;
  return c;
}

// All masks with popcount b, by Gosper's hack.
template <class F>
void for_each_mask(std::size_t n, std::size_t b, F&& f) {
  if (b == 0 || b > n) return;
  Mask m = (Mask{1} << b) - 1;
  const Mask limit = Mask{1} << n;
  while (m < limit) {
    f(m);
    const Mask c = m & (~m + 1);
    const Mask r = m + c;
    m = (((r ^ m) >> 2) / c) | r;
  }
}

struct Sweep {
  std::uint64_t profiles = 0;
  std::uint64_t se_count = 0;
  std::size_t opt_doi = 0;
  std::optional<std::size_t> min_se_doi;
  std::optional<std::size_t> max_se_doi;
  std::vector<Mask> equilibria;
};

inline Sweep sweep(const Graph& g, std::size_t b, const Rational& lambda) {
  Sweep s;
  for_each_mask(g.n(), b, [&](Mask m) {
    ++s.profiles;
    const std::size_t d = doi(g, m);
    if (d > s.opt_doi) s.opt_doi = d;
    if (!is_se(g, m, lambda)) return;
    ++s.se_count;
    s.equilibria.push_back(m);
    if (!s.min_se_doi || d < *s.min_se_doi) s.min_se_doi = d;
    if (!s.max_se_doi || d > *s.max_se_doi) s.max_se_doi = d;
  });
  return s;
}

// Acyclicity of the improving-response graph by repeatedly peeling sinks.
inline bool has_improving_cycle(const Graph& g, std::size_t b, const Rational& lambda) {
  std::vector<Mask> all;
  for_each_mask(g.n(), b, [&](Mask m) { all.push_back(m); });
  std::vector<std::vector<std::size_t>> preds(all.size());
  std::vector<std::size_t> outdeg(all.size(), 0);
  const auto index = [&](Mask m) {
    return static_cast<std::size_t>(std::lower_bound(all.begin(), all.end(), m) - all.begin());
  };
  for (std::size_t i = 0; i < all.size(); ++i)
    for (Node u = 0; u < g.n(); ++u)
      for (Node v = u + 1; v < g.n(); ++v)
        if (profitable(g, all[i], lambda, u, v)) {
          ++outdeg[i];
          preds[index(swapped(all[i], u, v))].push_back(i);
        }
  std::vector<std::size_t> queue;
  for (std::size_t i = 0; i < all.size(); ++i)
    if (outdeg[i] == 0) queue.push_back(i);
  std::size_t removed = 0;
  while (!queue.empty()) {
    const std::size_t i = queue.back();
    queue.pop_back();
    ++removed;
    for (std::size_t p : preds[i])
      if (--outdeg[p] == 0) queue.push_back(p);
  }
  return removed < all.size();
}

inline std::size_t alpha(const Graph& g) {
  const std::size_t n = g.n();
  std::vector<Mask> nbr(n, 0);
  for (auto [u, v] : g.edges()) {
    nbr[u] |= Mask{1} << v;
    nbr[v] |= Mask{1} << u;
  }
  std::size_t best = 0;
  // Include-or-skip recursion over node ids.
  auto rec = [&](auto&& self, Node v, Mask banned, std::size_t size) -> void {
    if (size + (n - v) <= best) return;
    if (v == n) {
      best = size;
      return;
    }
    if (!((banned >> v) & 1U)) self(self, v + 1, banned | nbr[v], size + 1);
    self(self, v + 1, banned, size);
  };
  rec(rec, 0, 0, 0);
  return best;
}

inline bool is_vertex_cover(const Graph& g, Mask c) {
  for (auto [u, v] : g.edges())
    if (!blue(c, u) && !blue(c, v)) return false;
  return true;
}

}  // namespace oracle
