#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "schelling/game.hpp"
#include "schelling/rng.hpp"

namespace schelling {

// Exchange of the agents on nodes u and v, normalised so u < v.
struct SwapMove {
  Node u = 0;
  Node v = 0;

  SwapMove() = default;
  SwapMove(Node a, Node b) : u(a < b ? a : b), v(a < b ? b : a) {}
  friend bool operator==(const SwapMove&, const SwapMove&) = default;
};

class SwapPolicy {
 public:
  enum class Kind { FirstLex, BestPotentialDrop, UniformRandom };

  static SwapPolicy first_lex() { return SwapPolicy(Kind::FirstLex, 0); }
  static SwapPolicy best_potential_drop() { return SwapPolicy(Kind::BestPotentialDrop, 0); }
  static SwapPolicy uniform_random(std::uint64_t seed) { return SwapPolicy(Kind::UniformRandom, seed); }
  // "first-lex", "best-potential-drop", "uniform-random".
  static SwapPolicy parse(std::string_view name, std::uint64_t seed);

  Kind kind() const noexcept { return kind_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::string_view name() const noexcept;

 private:
  SwapPolicy(Kind kind, std::uint64_t seed) : kind_(kind), seed_(seed) {}
  Kind kind_;
  std::uint64_t seed_;
};

// True iff the colors differ and both agents strictly gain in peak score.
bool is_profitable_swap(const GameSpec& game, const Profile& p, Node u, Node v);

Profile apply_swap(const Profile& p, SwapMove mv);

// Every profitable swap, lexicographic in (u, v).
std::vector<SwapMove> profitable_swaps(const GameSpec& game, const Profile& p);

// Phi(after) - Phi(before) for the swap; only edges at u and v change.
std::int64_t potential_change(const Graph& g, const Profile& p, SwapMove mv);

// A profitable swap chosen by the policy, or none at an equilibrium. The
// random policy draws from `rng`; the overload without it seeds a fresh
// generator from the policy seed, so equal seeds pick equal moves.
std::optional<SwapMove> find_profitable_swap(const GameSpec& game, const Profile& p, const SwapPolicy& policy,
                                             Rng& rng);
std::optional<SwapMove> find_profitable_swap(const GameSpec& game, const Profile& p, const SwapPolicy& policy);

struct TraceStep {
  std::size_t step = 0;  // 1-based
  SwapMove move;
  std::size_t phi_before = 0;
  std::size_t phi_after = 0;
  std::size_t doi_after = 0;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

enum class OutcomeKind { Converged, CycleDetected, BudgetExhausted };
std::string_view to_string(OutcomeKind kind);

struct DynamicsOutcome {
  OutcomeKind kind = OutcomeKind::Converged;
  Profile final_profile;
  std::size_t steps = 0;
  std::vector<TraceStep> trace;
  // For CycleDetected: number of swaps after which the repeated profile
  // first appeared, so trace[cycle_start..] is the closed walk.
  std::optional<std::size_t> cycle_start;
};

// Applies profitable swaps until none remains, a profile repeats, or
// max_steps swaps were made. Throws InvalidInput when max_steps is 0.
DynamicsOutcome run_dynamics(const GameSpec& game, const Profile& start, const SwapPolicy& policy,
                             std::size_t max_steps);

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

// All C(n, b) profiles indexed by colex rank of the blue set. Edges are
// sorted by (rank, move), independent of the thread count.
struct ResponseGraph {
  struct Arc {
    std::uint64_t target;
    SwapMove move;
  };
  std::size_t n = 0;
  std::size_t b = 0;
  std::vector<std::vector<Arc>> out;

  std::size_t profile_count() const { return out.size(); }
  Profile profile(std::uint64_t rank) const;
  std::vector<std::uint64_t> sinks() const;
};

// Throws BudgetExceeded when C(n, b) exceeds `budget`. threads = 0 uses all
// hardware threads.
ResponseGraph response_graph(const GameSpec& game, std::uint64_t budget = kDefaultEnumerationBudget,
                             unsigned threads = 0);

// Closed walk of profitable swaps: profiles.front() == profiles.back() and
// profiles[i+1] = apply_swap(profiles[i], moves[i]).
struct ImprovingCycle {
  std::vector<Profile> profiles;
  std::vector<SwapMove> moves;
};

std::optional<ImprovingCycle> find_improving_cycle(const ResponseGraph& rg);
std::optional<ImprovingCycle> has_improving_cycle(const GameSpec& game,
                                                  std::uint64_t budget = kDefaultEnumerationBudget,
                                                  unsigned threads = 0);

}  // namespace schelling
