#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "schelling/dynamics.hpp"
#include "schelling/game.hpp"

namespace schelling {

struct EnumerationOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;  // max profiles visited
  unsigned threads = 0;                              // 0 = all hardware threads

  // Budget taken from SCHELLING_ENUM_BUDGET when set.
  static EnumerationOptions from_env(unsigned threads = 0);
};

// Reads an unsigned integer environment variable; `fallback` when unset.
// Throws InvalidInput when it is set but malformed.
std::uint64_t env_budget(const char* name, std::uint64_t fallback);

struct EquilibriumCheck {
  bool is_se = true;
  std::optional<SwapMove> counterexample;  // lexicographically first profitable swap
};

EquilibriumCheck is_swap_equilibrium(const GameSpec& game, const Profile& p);

struct OptimalDoi {
  std::size_t value = 0;
  Profile witness;            // lowest colex rank among maximisers
  std::size_t ceiling = 0;    // min{(Delta+1) b, n}
  bool reached_ceiling = false;
};

// Exhaustive maximum DoI; stops early once the ceiling is attained. Throws
// BudgetExceeded when C(n, b) exceeds the budget.
OptimalDoi optimal_doi(const GameSpec& game, const EnumerationOptions& options = {});

struct BoundCheck {
  std::string name;
  std::string relation;  // "<=", ">=", "=="
  Rational measured;
  Rational bound;
  bool satisfied = true;
};

struct AnalysisReport {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t b = 0;
  Rational lambda;
  std::uint64_t profile_count = 0;

  bool se_exists = false;
  std::uint64_t se_count = 0;
  std::optional<std::size_t> min_se_doi;
  std::optional<std::size_t> max_se_doi;
  std::optional<Profile> min_se_witness;
  std::optional<Profile> max_se_witness;
  std::size_t opt_doi = 0;
  Profile opt_witness;
  std::optional<Rational> poa;
  std::optional<Rational> pos;

  // Equilibria where agents of both colors are segregated (never expected).
  std::uint64_t mixed_segregation_se = 0;
  std::optional<Profile> mixed_segregation_witness;

  std::vector<BoundCheck> bounds;

  bool bounds_hold() const {
    for (const auto& c : bounds)
      if (!c.satisfied) return false;
    return true;
  }
};

// Full sweep over all C(n, b) profiles. Results, including witnesses (the
// lowest colex rank in each role), do not depend on the thread count.
// `bounds` is left empty; see bound_checks.
AnalysisReport enumerate_equilibria(const GameSpec& game, const EnumerationOptions& options = {});

// Every equilibrium, in colex order of the blue set.
std::vector<Profile> all_equilibria(const GameSpec& game, const EnumerationOptions& options = {});

// Evaluates every theoretical bound applicable to the game against the
// report. Checks depending on the independence number are skipped when its
// computation exceeds `alpha_budget` expansions.
std::vector<BoundCheck> bound_checks(const GameSpec& game, const AnalysisReport& report,
                                     std::uint64_t alpha_budget = kDefaultAlphaBudget);

// enumerate_equilibria followed by bound_checks.
AnalysisReport analyze(const GameSpec& game, const EnumerationOptions& options = {},
                       std::uint64_t alpha_budget = kDefaultAlphaBudget);

}  // namespace schelling
