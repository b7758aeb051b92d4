#include "schelling/construct.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>
#include <unordered_set>

#include "schelling/combinatorics.hpp"
#include "schelling/errors.hpp"

namespace schelling {

namespace {

void require(bool ok, const char* guard, const std::string& what) {
  if (!ok) throw PreconditionViolation(guard, what);
}

std::int64_t as_int(std::size_t v) { return static_cast<std::int64_t>(v); }

void check_lambda_range(const GameSpec& game) {
  const auto deg = degree_profile(game.graph());
  const Rational lambda = game.lambda().value();
  require(lambda <= Rational(1, 2), "lambda-at-most-half", "needs Lambda <= 1/2, got " + game.lambda().to_string());
  require(lambda >= Rational(1, as_int(deg.min_degree) + 1), "lambda-at-least-inverse-min-closed-degree",
          "needs Lambda >= 1/(delta+1) = 1/" + std::to_string(deg.min_degree + 1));
}

}  // namespace

Profile independent_set_placement(const GameSpec& game, const NodeSet& is) {
  check_lambda_range(game);
  require(is.universe() == game.n(), "node-set-size", "independent set universe does not match the graph");
  const std::size_t size = is.size();
  require(size == game.blue_count() || size == game.red_count(), "placement-size",
          "set has " + std::to_string(size) + " nodes, needs b or n-b");
  require(is_independent(game.graph(), is), "set-independent", "set is not independent");

  Profile p(size == game.blue_count() ? is : is.complement());
  if (!is_swap_equilibrium(game, p).is_se)
    throw AssertionFailure("independent-set placement " + p.to_string() + " is not an equilibrium");
  return p;
}

Profile bipartite_se_from_optimum(const GameSpec& game, const Profile& opt) {
  game.validate(opt);
  const auto parts = bipartition(game.graph());
  require(parts.has_value(), "graph-bipartite", "graph is not bipartite");
  require(game.lambda().value() == Rational(1, 2), "lambda-half", "needs Lambda = 1/2");

  // Moves blues off `from` onto red nodes of `to`, ascending ids on both.
  const auto push = [&](const std::vector<Node>& from, const std::vector<Node>& to) {
    Profile p = opt;
    std::vector<Node> movers, targets;
    for (Node v : from)
      if (p.is_blue(v)) movers.push_back(v);
    for (Node v : to)
      if (!p.is_blue(v)) targets.push_back(v);
    const std::size_t moves = std::min(movers.size(), targets.size());
    for (std::size_t i = 0; i < moves; ++i) p.swap_colors(movers[i], targets[i]);
    return p;
  };
  Profile sigma1 = push(parts->larger, parts->smaller);
  Profile sigma2 = push(parts->smaller, parts->larger);
  const Graph& g = game.graph();
  Profile best = doi(g, sigma2) > doi(g, sigma1) ? std::move(sigma2) : std::move(sigma1);

  if (!is_swap_equilibrium(game, best).is_se)
    throw AssertionFailure("bipartite construction " + best.to_string() + " is not an equilibrium");
  if (2 * doi(g, best) < doi(g, opt))
    throw AssertionFailure("bipartite construction keeps doi " + std::to_string(doi(g, best)) + " < doi(opt)/2");
  return best;
}

Profile phi_minimum_profile(const GameSpec& game, const PhiMinimization& how) {
  const Graph& g = game.graph();
  const std::size_t n = game.n(), b = game.blue_count();
  if (how.mode == PhiMinimization::Mode::GlobalBruteForce) {
    const std::uint64_t total = binomial(n, b);
    if (total > how.enumeration.budget)
      throw BudgetExceeded("global potential minimisation needs " + std::to_string(total) + " profiles, budget is " +
                           std::to_string(how.enumeration.budget));
    const auto edges = g.edges();
    std::size_t best = SIZE_MAX;
    std::uint64_t best_rank = 0;
    for_each_subset(n, b, 0, total, [&](std::uint64_t rank, const std::vector<Node>&, const NodeSet& set) {
      std::size_t phi = 0;
      for (auto [u, v] : edges) phi += set.contains(u) == set.contains(v) ? 1 : 0;
      if (phi < best) {
        best = phi;
        best_rank = rank;
      }
    });
    return Profile(NodeSet(n, colex_unrank(best_rank, b)));
  }

  require(degree_profile(g).almost_regular, "graph-almost-regular", "local search needs an almost-regular graph");
  require(game.lambda().value() <= Rational(1, 2), "lambda-at-most-half", "local search needs Lambda <= 1/2");
  Profile start;
  if (how.start) {
    game.validate(*how.start);
    start = *how.start;
  } else {
    std::vector<Node> order(n);
    std::iota(order.begin(), order.end(), Node{0});
    Rng rng(how.seed);
    rng.shuffle(order);
    order.resize(b);
    start = Profile(NodeSet(n, order));
  }
  const auto outcome = run_dynamics(game, start, SwapPolicy::uniform_random(how.seed), g.m() + 1);
  if (outcome.kind != OutcomeKind::Converged)
    throw AssertionFailure("potential local search did not converge within m swaps");
  return outcome.final_profile;
}

std::optional<std::size_t> KPartition::part_of(Node v) const {
  for (std::size_t t = 0; t < parts.size(); ++t)
    if (parts[t].contains(v)) return t;
  return std::nullopt;
}

std::size_t KPartition::internal_edges() const {
  return std::accumulate(internal_degree.begin(), internal_degree.end(), std::size_t{0}) / 2;
}

namespace {

// Assignment state shared by both cut procedures.
class CutState {
 public:
  CutState(const Graph& g, std::size_t k) : g_(g), k_(k), part_(g.n(), kNone), members_(k, NodeSet(g.n())) {}

  static constexpr std::size_t kNone = SIZE_MAX;

  std::size_t part(Node v) const { return part_[v]; }
  std::size_t neighbors_in(Node v, std::size_t t) const {
    return g_.closed_neighborhood(v).intersection_size(members_[t]) - (part_[v] == t ? 1 : 0);
  }
  std::size_t size(std::size_t t) const { return members_[t].size(); }
  const NodeSet& members(std::size_t t) const { return members_[t]; }

  void place(Node v, std::size_t t) {
    if (part_[v] != kNone) members_[part_[v]].erase(v);
    part_[v] = t;
    members_[t].insert(v);
  }

  KPartition finish(const NodeSet& U) const {
    KPartition out;
    out.k = k_;
    out.parts = members_;
    out.internal_degree.assign(g_.n(), 0);
    U.for_each([&](Node v) { out.internal_degree[v] = neighbors_in(v, part_[v]); });
    return out;
  }

 private:
  const Graph& g_;
  std::size_t k_;
  std::vector<std::size_t> part_;
  std::vector<NodeSet> members_;
};

std::vector<Node> by_descending_degree(const Graph& g, const NodeSet& U) {
  std::vector<Node> order = U.to_vector();
  std::stable_sort(order.begin(), order.end(), [&](Node a, Node b) { return g.degree(a) > g.degree(b); });
  return order;
}

}  // namespace

KPartition greedy_k_max_cut(const Graph& g, const NodeSet& U, std::size_t k) {
  require(k >= 1, "k-positive", "k must be at least 1");
  require(U.universe() == g.n(), "node-set-size", "node set universe does not match the graph");
  CutState s(g, k);
  for (Node v : by_descending_degree(g, U)) {
    std::size_t best = 0;
    for (std::size_t t = 1; t < k; ++t) {
      const std::size_t a = s.neighbors_in(v, t), c = s.neighbors_in(v, best);
      if (a < c || (a == c && s.size(t) < s.size(best))) best = t;
    }
    s.place(v, best);
  }
  // Each move strictly increases the cut, so this terminates.
  for (bool moved = true; moved;) {
    moved = false;
    U.for_each([&](Node v) {
      std::size_t best = s.part(v);
      for (std::size_t t = 0; t < k; ++t)
        if (s.neighbors_in(v, t) < s.neighbors_in(v, best)) best = t;
      if (best != s.part(v)) {
        s.place(v, best);
        moved = true;
      }
    });
  }
  KPartition out = s.finish(U);
  U.for_each([&](Node v) {
    const std::size_t deg_u = g.closed_neighborhood(v).intersection_size(U) - 1;
    if (out.internal_degree[v] > deg_u / k || out.internal_degree[v] > g.degree(v) / k)
      throw AssertionFailure("greedy cut leaves node " + std::to_string(v) + " with internal degree " +
                             std::to_string(out.internal_degree[v]));
  });
  return out;
}

BalancedCut balanced_k_max_cut(const Graph& g, const NodeSet& U, std::size_t k) {
  require(k >= 1, "k-positive", "k must be at least 1");
  require(U.universe() == g.n(), "node-set-size", "node set universe does not match the graph");
  require(U.size() >= 2, "set-size-at-least-two", "balanced cut needs |U| >= 2");
  const std::size_t size = U.size();
  CutState s(g, k);
  BalancedCut out;

  if (size <= k) {
    std::size_t t = 0;
    U.for_each([&](Node v) { s.place(v, t++); });
    out.partition = s.finish(U);
    return out;
  }

  // Target sizes q+1 for the first r parts and q for the rest; cyclic
  // exchanges keep them.
  std::vector<std::size_t> target(k, size / k);
  for (std::size_t t = 0; t < size % k; ++t) ++target[t];
  for (Node v : by_descending_degree(g, U)) {
    std::size_t best = SIZE_MAX;
    for (std::size_t t = 0; t < k; ++t) {
      if (s.size(t) == target[t]) continue;
      if (best == SIZE_MAX || s.neighbors_in(v, t) < s.neighbors_in(v, best)) best = t;
    }
    s.place(v, best);
  }

  const auto violates = [&](Node v) { return s.neighbors_in(v, s.part(v)) > g.degree(v) / k; };
  const std::size_t cap = g.m() + 1;
  for (;;) {
    std::vector<Node> rep(k);
    std::optional<std::size_t> clean;
    for (std::size_t t = 0; t < k && !clean; ++t) {
      std::optional<Node> bad;
      s.members(t).for_each([&](Node v) {
        if (!bad && violates(v)) bad = v;
      });
      if (bad)
        rep[t] = *bad;
      else
        clean = t;
    }
    if (clean) {
      out.distinguished = *clean;
      break;
    }
    if (out.rho_swaps == cap) throw BudgetExceeded("balanced cut exceeded " + std::to_string(cap) + " exchanges");

    // Arc t -> h when rep[t] has at most floor(deg/k) neighbors in part h.
    // Every part has one, so following first arcs from part 0 closes a cycle.
    std::vector<std::size_t> next(k, SIZE_MAX);
    for (std::size_t t = 0; t < k; ++t)
      for (std::size_t h = 0; h < k && next[t] == SIZE_MAX; ++h)
        if (h != t && s.neighbors_in(rep[t], h) <= g.degree(rep[t]) / k) next[t] = h;
    std::vector<std::size_t> visit(k, SIZE_MAX);
    std::size_t t = 0;
    for (std::size_t i = 0; visit[t] == SIZE_MAX; ++i) {
      if (next[t] == SIZE_MAX) throw AssertionFailure("auxiliary digraph has a node without out-arcs");
      visit[t] = i;
      t = next[t];
    }
    const std::size_t before = s.finish(U).internal_edges();
    std::vector<std::pair<Node, std::size_t>> moves;
    std::size_t c = t;
    do {
      moves.emplace_back(rep[c], next[c]);
      c = next[c];
    } while (c != t);
    for (auto [v, h] : moves) s.place(v, h);
    const std::size_t after = s.finish(U).internal_edges();
    if (after + moves.size() > before)
      throw AssertionFailure("cyclic exchange did not reduce internal edges by its length");
    ++out.rho_swaps;
  }
  out.partition = s.finish(U);
  for (std::size_t t = 0; t < k; ++t)
    if (out.partition.parts[t].size() < size / k) throw AssertionFailure("balanced cut lost balance");
  return out;
}

std::optional<std::size_t> blue_spread_parts(const Graph& g, const Lambda& lambda) {
  const auto degrees = distinct_degrees(g);
  const Rational L = lambda.value();
  for (std::size_t k = 1; k <= degree_profile(g).max_degree + 1; ++k) {
    bool ok = true;
    for (std::size_t d : degrees)
      if (Rational(as_int(d / k + 1)) > L * Rational(as_int(d + 1))) ok = false;
    if (ok) return k;
  }
  return std::nullopt;
}

HierarchicalResult hierarchical_pos_construction(const GameSpec& game, const Profile& opt,
                                                 std::uint64_t alpha_budget) {
  game.validate(opt);
  const Graph& g = game.graph();
  const auto deg = degree_profile(g);
  const Rational lambda = game.lambda().value();
  const std::size_t n = game.n(), b = game.blue_count();
  require(deg.almost_regular, "graph-almost-regular", "needs an almost-regular graph");
  require(lambda <= Rational(1, 2), "lambda-at-most-half", "needs Lambda <= 1/2");
  require(lambda > Rational(1, as_int(deg.max_degree) + 1), "lambda-above-inverse-max-closed-degree",
          "needs Lambda > 1/(Delta+1)");
  const std::size_t alpha = independence_number(g, alpha_budget).size;
  require(b < alpha, "b-below-alpha", "needs b < alpha(G) = " + std::to_string(alpha));

  HierarchicalResult res;
  const auto guard = [&](bool ok, const char* name) {
    if (!ok) res.failed_guards.emplace_back(name);
    return ok;
  };

  NodeSet B(n), R(n);
  for (Node v = 0; v < n; ++v) {
    if (same_color_fraction(g, opt, v).segregated()) continue;
    (opt.is_blue(v) ? B : R).insert(v);
  }
  const auto dominated = [&](const NodeSet& part) {
    NodeSet d(n);
    part.for_each([&](Node v) {
      for (Node w : g.neighbors(v))
        if (R.contains(w)) d.insert(w);
    });
    return d;
  };

  res.k = blue_spread_parts(g, game.lambda());
  if (guard(res.k.has_value(), "k-exists") && guard(!B.empty(), "optimum-has-integrated-blue")) {
    const std::size_t k = *res.k;
    std::vector<NodeSet> dominated_at;
    NodeSet current = B;
    for (;;) {
      const KPartition level = greedy_k_max_cut(g, current, k);
      std::size_t best = SIZE_MAX, best_dom = 0;
      NodeSet best_set(n);
      for (std::size_t t = 0; t < k; ++t) {
        if (level.parts[t].empty()) continue;
        NodeSet d = dominated(level.parts[t]);
        if (best == SIZE_MAX || d.size() > best_dom) {
          best = t;
          best_dom = d.size();
          best_set = std::move(d);
        }
      }
      res.levels.push_back({level.parts[best], best_dom});
      dominated_at.push_back(std::move(best_set));
      const NodeSet& chosen = level.parts[best];
      if (chosen.size() < 2 || chosen.size() == current.size()) break;
      current = chosen;
    }

    for (std::size_t h = 0; h < res.levels.size() && !res.chosen_level; ++h)
      if ((R - dominated_at[h]).size() >= k * (b - 1)) res.chosen_level = h;
    if (guard(res.chosen_level.has_value(), "level-exists")) {
      const std::size_t ell = *res.chosen_level;
      const NodeSet& blue_core = res.levels[ell].blue_part;
      const NodeSet rest = R - dominated_at[ell];
      const std::size_t extra = b - std::min(b, blue_core.size());
      NodeSet blue = blue_core;
      if (extra > 0 && guard(rest.size() >= 2, "remaining-red-at-least-two")) {
        const BalancedCut cut = balanced_k_max_cut(g, rest, k);
        const auto spots = cut.partition.parts[cut.distinguished].to_vector();
        if (guard(spots.size() >= extra, "distinguished-part-capacity"))
          for (std::size_t i = 0; i < extra; ++i) blue.insert(spots[i]);
      }
      if (guard(blue.size() == b, "blue-count")) {
        Profile built(blue);
        bool below = true;
        for (Node v : built.blue_nodes())
          if (same_color_fraction(g, built, v).value() > lambda) below = false;
        guard(below, "blue-at-or-below-peak");
        const std::size_t built_doi = doi(g, built);
        guard(built_doi >= b + dominated_at[ell].size(), "doi-floor");
        guard(Rational(as_int(built_doi)) > Rational(as_int(R.size()), as_int(k)), "doi-exceeds-red-share");
        if (guard(is_swap_equilibrium(game, built).is_se, "constructed-is-se")) res.constructed = built;
      }
    }
  }

  // Best verified equilibrium; earlier candidates win ties.
  std::vector<std::pair<std::string, Profile>> candidates;
  if (is_swap_equilibrium(game, opt).is_se) candidates.emplace_back("optimum", opt);
  if (res.constructed) candidates.emplace_back("constructed", *res.constructed);
  const auto dyn = run_dynamics(game, opt, SwapPolicy::first_lex(), g.m() + 1);
  if (dyn.kind == OutcomeKind::Converged) candidates.emplace_back("dynamics", dyn.final_profile);
  if (candidates.empty()) throw AssertionFailure("no verified equilibrium among the candidates");
  std::size_t pick = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i)
    if (doi(g, candidates[i].second) > doi(g, candidates[pick].second)) pick = i;
  res.source = candidates[pick].first;
  res.profile = candidates[pick].second;
  return res;
}

RepairResult se_repair_bounded_degree(const GameSpec& game, const Profile& start) {
  game.validate(start);
  const Graph& g = game.graph();
  const auto deg = degree_profile(g);
  require(deg.almost_regular, "graph-almost-regular", "needs an almost-regular graph");
  require(deg.max_degree <= 3, "max-degree-at-most-three", "needs Delta <= 3");
  require(game.lambda().value() <= Rational(1, 2), "lambda-at-most-half", "needs Lambda <= 1/2");

  const auto segregated_set = [&](const Profile& p) {
    NodeSet s(g.n());
    for (Node v = 0; v < g.n(); ++v)
      if (same_color_fraction(g, p, v).segregated()) s.insert(v);
    return s;
  };

  // A swap qualifies when it lowers Phi and segregates nobody new.
  const auto qualifies = [&](const Profile& p, const NodeSet& seg_before, SwapMove mv) {
    if (p.is_blue(mv.u) == p.is_blue(mv.v) || potential_change(g, p, mv) >= 0) return false;
    return (segregated_set(apply_swap(p, mv)) - seg_before).empty();
  };

  // Candidate steps in preference order: profitable swaps that segregate
  // nobody, then the exchange of an endpoint with the agent the swap would
  // have segregated, then any other qualifying swap.
  const auto candidates = [&](const Profile& p, const std::vector<SwapMove>& proposals) {
    const NodeSet seg_before = segregated_set(p);
    std::vector<RepairStep> out;
    const auto add = [&](SwapMove proposed, SwapMove applied) {
      if (!qualifies(p, seg_before, applied)) return;
      for (const auto& c : out)
        if (c.applied == applied) return;
      out.push_back({proposed, applied});
    };
    for (const auto& mv : proposals) add(mv, mv);
    for (const auto& mv : proposals)
      (segregated_set(apply_swap(p, mv)) - seg_before).for_each([&](Node w) {
        for (Node end : {mv.u, mv.v})
          if (g.has_edge(w, end)) add(mv, SwapMove(end, w));
      });
    for (Node u = 0; u < g.n(); ++u)
      for (Node v = u + 1; v < g.n(); ++v) add(proposals.front(), SwapMove(u, v));
    return out;
  };

  // The first choice can dead-end when Lambda < 1/2, so search depth-first.
  // Phi falls on every step, hence paths have at most m steps and the
  // visited set keeps the search finite.
  constexpr std::uint64_t kRepairBudget = 1'000'000;
  std::unordered_set<Profile> dead;
  RepairResult res;
  res.profile = start;
  const std::function<bool(const Profile&)> search = [&](const Profile& p) {
    const auto proposals = profitable_swaps(game, p);
    if (proposals.empty()) {
      res.profile = p;
      return true;
    }
    if (dead.contains(p)) return false;
    if (dead.size() >= kRepairBudget) throw BudgetExceeded("repair search exceeded its state budget");
    for (auto step : candidates(p, proposals)) {
      const Profile next = apply_swap(p, step.applied);
      step.phi_after = potential(g, next);
      step.doi_after = doi(g, next);
      res.steps.push_back(step);
      if (search(next)) return true;
      res.steps.pop_back();
    }
    dead.insert(p);
    return false;
  };
  if (!search(start))
    throw AssertionFailure("no sequence of potential-lowering, non-segregating swaps reaches an equilibrium");
  if (res.steps.size() > g.m()) throw AssertionFailure("repair exceeded m iterations");
  if (doi(g, res.profile) < doi(g, start)) throw AssertionFailure("repair lowered the degree of integration");
  return res;
}

Certificate certify(const GameSpec& game, const Profile& p, bool assertions_passed) {
  const auto check = is_swap_equilibrium(game, p);
  return {check.is_se, doi(game.graph(), p), potential(game.graph(), p), assertions_passed, check.counterexample};
}

}  // namespace schelling
