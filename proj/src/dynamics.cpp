#include "schelling/dynamics.hpp"

#include <string>
#include <unordered_map>

#include "parallel.hpp"
#include "schelling/combinatorics.hpp"
#include "schelling/errors.hpp"
#include "swap_scan.hpp"

namespace schelling {

SwapPolicy SwapPolicy::parse(std::string_view name, std::uint64_t seed) {
  if (name == "first-lex") return first_lex();
  if (name == "best-potential-drop") return best_potential_drop();
  if (name == "uniform-random") return uniform_random(seed);
  throw InvalidInput("unknown policy '" + std::string(name) +
                     "' (first-lex, best-potential-drop, uniform-random)");
}

std::string_view SwapPolicy::name() const noexcept {
  switch (kind_) {
    case Kind::FirstLex: return "first-lex";
    case Kind::BestPotentialDrop: return "best-potential-drop";
    case Kind::UniformRandom: return "uniform-random";
  }
  return "?";
}

std::string_view to_string(OutcomeKind kind) {
  switch (kind) {
    case OutcomeKind::Converged: return "converged";
    case OutcomeKind::CycleDetected: return "cycle-detected";
    case OutcomeKind::BudgetExhausted: return "budget-exhausted";
  }
  return "?";
}

bool is_profitable_swap(const GameSpec& game, const Profile& p, Node u, Node v) {
  if (u == v || p.is_blue(u) == p.is_blue(v)) return false;
  const Fraction fu = same_color_fraction(game, p, u);
  const Fraction fv = same_color_fraction(game, p, v);
  const bool adjacent = game.graph().has_edge(u, v);
  return game.score_key(predicted_swap_fraction(fv, adjacent)) > game.score_key(fu) &&
         game.score_key(predicted_swap_fraction(fu, adjacent)) > game.score_key(fv);
}

Profile apply_swap(const Profile& p, SwapMove mv) {
  Profile out = p;
  out.swap_colors(mv.u, mv.v);
  return out;
}

std::vector<SwapMove> profitable_swaps(const GameSpec& game, const Profile& p) {
  detail::SwapScan scan(game, p);
  std::vector<SwapMove> out;
  for (Node u = 0; u < game.n(); ++u)
    for (Node v = u + 1; v < game.n(); ++v)
      if (scan.profitable(u, v)) out.emplace_back(u, v);
  return out;
}

std::int64_t potential_change(const Graph& g, const Profile& p, SwapMove mv) {
  if (p.is_blue(mv.u) == p.is_blue(mv.v)) return 0;
  std::int64_t delta = 0;
  for (Node end : {mv.u, mv.v}) {
    const Node other = end == mv.u ? mv.v : mv.u;
    const bool was_blue = p.is_blue(end);
    for (Node w : g.neighbors(end)) {
      if (w == other) continue;
      // The edge end-w is monochromatic before iff w shares end's old color
      // and after iff it shares the new one.
      delta += p.is_blue(w) == was_blue ? -1 : 1;
    }
  }
  return delta;
}

std::optional<SwapMove> find_profitable_swap(const GameSpec& game, const Profile& p, const SwapPolicy& policy,
                                             Rng& rng) {
  switch (policy.kind()) {
    case SwapPolicy::Kind::FirstLex: {
      detail::SwapScan scan(game, p);
      for (Node u = 0; u < game.n(); ++u)
        for (Node v = u + 1; v < game.n(); ++v)
          if (scan.profitable(u, v)) return SwapMove(u, v);
      return std::nullopt;
    }
    case SwapPolicy::Kind::BestPotentialDrop: {
      std::optional<SwapMove> best;
      std::int64_t best_change = 0;
      for (SwapMove mv : profitable_swaps(game, p)) {
        const std::int64_t change = potential_change(game.graph(), p, mv);
        if (!best || change < best_change) {
          best = mv;
          best_change = change;
        }
      }
      return best;
    }
    case SwapPolicy::Kind::UniformRandom: {
      const auto moves = profitable_swaps(game, p);
      if (moves.empty()) return std::nullopt;
      return moves[rng.below(moves.size())];
    }
  }
  return std::nullopt;
}

std::optional<SwapMove> find_profitable_swap(const GameSpec& game, const Profile& p, const SwapPolicy& policy) {
  Rng rng(policy.seed());
  return find_profitable_swap(game, p, policy, rng);
}

DynamicsOutcome run_dynamics(const GameSpec& game, const Profile& start, const SwapPolicy& policy,
                             std::size_t max_steps) {
  if (max_steps == 0) throw InvalidInput("max_steps must be at least 1");
  game.validate(start);
  Rng rng(policy.seed());

  DynamicsOutcome out;
  out.final_profile = start;
  std::unordered_map<Profile, std::size_t> seen{{start, 0}};
  std::size_t phi = potential(game.graph(), start);

  for (;;) {
    const auto mv = find_profitable_swap(game, out.final_profile, policy, rng);
    if (!mv) {
      out.kind = OutcomeKind::Converged;
      return out;
    }
    if (out.steps == max_steps) {
      out.kind = OutcomeKind::BudgetExhausted;
      return out;
    }
    const auto change = potential_change(game.graph(), out.final_profile, *mv);
    out.final_profile.swap_colors(mv->u, mv->v);
    ++out.steps;
    const std::size_t phi_after = static_cast<std::size_t>(static_cast<std::int64_t>(phi) + change);
    out.trace.push_back({out.steps, *mv, phi, phi_after, doi(game.graph(), out.final_profile)});
    phi = phi_after;

    auto [it, inserted] = seen.emplace(out.final_profile, out.steps);
    if (!inserted) {
      out.kind = OutcomeKind::CycleDetected;
      out.cycle_start = it->second;
      return out;
    }
  }
}

Profile ResponseGraph::profile(std::uint64_t rank) const {
  const auto blue = colex_unrank(rank, b);
  return Profile(NodeSet(n, blue));
}

std::vector<std::uint64_t> ResponseGraph::sinks() const {
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < this->out.size(); ++r)
    if (this->out[r].empty()) out.push_back(r);
  return out;
}

ResponseGraph response_graph(const GameSpec& game, std::uint64_t budget, unsigned threads) {
  const std::size_t n = game.n(), b = game.blue_count();
  const std::uint64_t total = binomial(n, b);
  if (total > budget)
    throw BudgetExceeded("response graph needs " + (total == kSaturated ? std::string("> 2^64") : std::to_string(total)) +
                         " profiles, budget is " + std::to_string(budget));

  ResponseGraph rg;
  rg.n = n;
  rg.b = b;
  rg.out.resize(total);
  detail::parallel_chunks(total, threads, [&](std::size_t, std::uint64_t begin, std::uint64_t end) {
    for_each_subset(n, b, begin, end, [&](std::uint64_t rank, const std::vector<Node>& blue, const NodeSet& set) {
      detail::SwapScan scan(game, set);
      auto& arcs = rg.out[rank];
      for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v) {
          if (!scan.profitable(u, v)) continue;
          // Swapping a blue u with a red v replaces u by v in the blue set.
          std::vector<Node> next(blue.begin(), blue.end());
          const Node from = set.contains(u) ? u : v, to = set.contains(u) ? v : u;
          std::replace(next.begin(), next.end(), from, to);
          std::sort(next.begin(), next.end());
          arcs.push_back({colex_rank(next), SwapMove(u, v)});
        }
    });
  });
  return rg;
}

std::optional<ImprovingCycle> find_improving_cycle(const ResponseGraph& rg) {
  enum : std::uint8_t { White, Grey, Black };
  const std::uint64_t total = rg.profile_count();
  std::vector<std::uint8_t> color(total, White);
  struct Frame {
    std::uint64_t node;
    std::size_t next_arc;
  };
  std::vector<Frame> stack;
  for (std::uint64_t root = 0; root < total; ++root) {
    if (color[root] != White) continue;
    stack.push_back({root, 0});
    color[root] = Grey;
    while (!stack.empty()) {
      Frame& top = stack.back();
      const auto& arcs = rg.out[top.node];
      if (top.next_arc == arcs.size()) {
        color[top.node] = Black;
        stack.pop_back();
        continue;
      }
      const auto& arc = arcs[top.next_arc++];
      if (color[arc.target] == White) {
        color[arc.target] = Grey;
        stack.push_back({arc.target, 0});
      } else if (color[arc.target] == Grey) {
        // Back edge: the cycle runs from the target's frame to the top.
        ImprovingCycle cycle;
        std::size_t i = stack.size();
        while (stack[i - 1].node != arc.target) --i;
        for (std::size_t j = i - 1; j < stack.size(); ++j) {
          cycle.profiles.push_back(rg.profile(stack[j].node));
          if (j + 1 < stack.size()) cycle.moves.push_back(rg.out[stack[j].node][stack[j].next_arc - 1].move);
        }
        cycle.moves.push_back(arc.move);
        cycle.profiles.push_back(rg.profile(arc.target));
        return cycle;
      }
    }
  }
  return std::nullopt;
}

std::optional<ImprovingCycle> has_improving_cycle(const GameSpec& game, std::uint64_t budget, unsigned threads) {
  return find_improving_cycle(response_graph(game, budget, threads));
}

}  // namespace schelling
