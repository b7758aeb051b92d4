#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schelling/analysis.hpp"
#include "schelling/dynamics.hpp"
#include "schelling/game.hpp"

namespace schelling {

// Places the color with |is| agents exactly on `is`. Requires
// 1/(delta+1) <= Lambda <= 1/2, |is| in {b, n-b} and `is` independent.
// The result is checked to be an equilibrium (AssertionFailure otherwise).
Profile independent_set_placement(const GameSpec& game, const NodeSet& is);

// From an optimum on a bipartite graph at Lambda = 1/2: push the blues of
// one class into red nodes of the other, for both classes, and keep the
// better profile. Checked to be an equilibrium with doi >= ceil(doi(opt)/2).
Profile bipartite_se_from_optimum(const GameSpec& game, const Profile& opt);

struct PhiMinimization {
  enum class Mode { GlobalBruteForce, LocalSearch };
  Mode mode = Mode::GlobalBruteForce;
  std::optional<Profile> start;  // LocalSearch; seeded random start otherwise
  std::uint64_t seed = 0;
  EnumerationOptions enumeration;
};

// GlobalBruteForce: a minimiser of the monochromatic edge count, lowest colex
// rank among ties. LocalSearch: uniform-random improving swaps until none is
// left; needs an almost-regular graph and Lambda <= 1/2.
Profile phi_minimum_profile(const GameSpec& game, const PhiMinimization& how = {});

// k parts over a node subset U of the graph.
struct KPartition {
  std::size_t k = 0;
  std::vector<NodeSet> parts;
  // Neighbors inside the node's own part, indexed by node id (0 outside U).
  std::vector<std::size_t> internal_degree;

  std::optional<std::size_t> part_of(Node v) const;
  std::size_t internal_edges() const;
};

// Greedy assignment by descending degree followed by single-vertex moves
// until no vertex has fewer neighbors in another part. Every vertex ends
// with internal degree <= floor(deg_U(v)/k) <= floor(deg(v)/k); this is
// asserted. Requires k >= 1.
KPartition greedy_k_max_cut(const Graph& g, const NodeSet& U, std::size_t k);

struct BalancedCut {
  KPartition partition;
  std::size_t distinguished = 0;  // nonempty part meeting the degree bound
  std::size_t rho_swaps = 0;
};

// Balanced partition (sizes differ by at most one) improved by cyclic
// exchanges until some part has every vertex within floor(deg(v)/k).
// Requires |U| >= 2 and k >= 1.
BalancedCut balanced_k_max_cut(const Graph& g, const NodeSet& U, std::size_t k);

// Smallest k with floor(d/k) + 1 <= Lambda (d + 1) for every degree d of g,
// or none when Lambda < 1/(delta+1).
std::optional<std::size_t> blue_spread_parts(const Graph& g, const Lambda& lambda);

struct HierarchyLevel {
  NodeSet blue_part;       // B_h^1
  std::size_t dominated;   // |R(B_h^1)|
};

struct HierarchicalResult {
  Profile profile;            // best verified equilibrium among the candidates
  std::string source;         // "optimum", "constructed" or "dynamics"
  std::optional<Profile> constructed;
  std::optional<std::size_t> k;
  std::vector<HierarchyLevel> levels;
  std::optional<std::size_t> chosen_level;
  std::vector<std::string> failed_guards;
};

// Multi-level spreading of the optimum's integrated blues. Requires an
// almost-regular graph, b < alpha(G), Lambda <= 1/2 and Lambda > 1/(Delta+1)
// (PreconditionViolation otherwise). Guard failures on small instances are
// listed in failed_guards rather than thrown.
HierarchicalResult hierarchical_pos_construction(const GameSpec& game, const Profile& opt,
                                                 std::uint64_t alpha_budget = kDefaultAlphaBudget);

struct RepairStep {
  SwapMove proposed;  // the profitable swap found
  SwapMove applied;   // differs when the proposal would segregate someone
  std::size_t phi_after = 0;
  std::size_t doi_after = 0;
};

struct RepairResult {
  Profile profile;
  std::vector<RepairStep> steps;
};

// Equilibrium with doi >= doi(start) on almost-regular graphs with
// Delta <= 3 and Lambda <= 1/2. Each step lowers Phi and creates no
// segregated agent; the steps are found by backtracking search. Throws
// AssertionFailure when no such sequence exists.
RepairResult se_repair_bounded_degree(const GameSpec& game, const Profile& start);

struct Certificate {
  bool is_se = false;
  std::size_t doi = 0;
  std::size_t phi = 0;
  bool assertions_passed = true;
  std::optional<SwapMove> counterexample;
};

Certificate certify(const GameSpec& game, const Profile& p, bool assertions_passed = true);

}  // namespace schelling
