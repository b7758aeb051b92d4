#include "schelling/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <cstdlib>
#include <string>

#include "parallel.hpp"
#include "schelling/combinatorics.hpp"
#include "schelling/errors.hpp"
#include "swap_scan.hpp"

namespace schelling {

namespace {

std::uint64_t checked_profile_count(const GameSpec& game, std::uint64_t budget) {
  const std::uint64_t total = binomial(game.n(), game.blue_count());
  if (total > budget)
    throw BudgetExceeded("enumeration needs " + (total == kSaturated ? std::string("> 2^64") : std::to_string(total)) +
                         " profiles, budget is " + std::to_string(budget));
  return total;
}

bool scan_is_se(const detail::SwapScan& scan, const std::vector<Node>& blue, const NodeSet& set, std::size_t n) {
  for (Node u : blue)
    for (Node v = 0; v < n; ++v)
      if (!set.contains(v) && scan.profitable(u, v)) return false;
  return true;
}

std::size_t scan_doi(const detail::SwapScan& scan, std::size_t n) {
  std::size_t d = 0;
  for (Node v = 0; v < n; ++v) d += scan.segregated(v) ? 0 : 1;
  return d;
}

}  // namespace

std::uint64_t env_budget(const char* name, std::uint64_t fallback) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return fallback;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(raw, &end, 10);
  if (*end != '\0' || raw[0] == '-') throw InvalidInput(std::string(name) + " must be a non-negative integer");
  return value;
}

EnumerationOptions EnumerationOptions::from_env(unsigned threads) {
  return {env_budget("SCHELLING_ENUM_BUDGET", kDefaultEnumerationBudget), threads};
}

EquilibriumCheck is_swap_equilibrium(const GameSpec& game, const Profile& p) {
  game.validate(p);
  detail::SwapScan scan(game, p);
  for (Node u = 0; u < game.n(); ++u)
    for (Node v = u + 1; v < game.n(); ++v)
      if (scan.profitable(u, v)) return {false, SwapMove(u, v)};
  return {};
}

OptimalDoi optimal_doi(const GameSpec& game, const EnumerationOptions& options) {
  const std::uint64_t total = checked_profile_count(game, options.budget);
  const std::size_t n = game.n(), b = game.blue_count();
  OptimalDoi out;
  out.ceiling = std::min((degree_profile(game.graph()).max_degree + 1) * b, n);

  struct Best {
    std::size_t value = 0;
    std::uint64_t rank = 0;
    bool any = false;
  };
  // A chunk that attains the ceiling lets every later chunk stop; earlier
  // chunks still run so the witness is the lowest-ranked maximiser.
  std::atomic<std::size_t> first_full{SIZE_MAX};
  std::mutex m;
  std::vector<std::pair<std::size_t, Best>> collected;
  detail::parallel_chunks(total, options.threads, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
    Best local;
    bool stop = false;
    for_each_subset(n, b, begin, end, [&](std::uint64_t rank, const std::vector<Node>&, const NodeSet& set) {
      if (stop || first_full.load(std::memory_order_relaxed) < chunk) {
        stop = true;
        return;
      }
      std::size_t d = 0;
      for (Node v = 0; v < n; ++v) {
        const NodeSet& closed = game.graph().closed_neighborhood(v);
        const std::size_t blue = closed.intersection_size(set);
        d += (blue != 0 && blue != closed.size()) ? 1 : 0;
      }
      if (!local.any || d > local.value) local = {d, rank, true};
      if (d == out.ceiling) {
        stop = true;
        std::size_t seen = first_full.load();
        while (chunk < seen && !first_full.compare_exchange_weak(seen, chunk)) {
        }
      }
    });
    std::lock_guard lock(m);
    collected.emplace_back(chunk, local);
  });
  std::sort(collected.begin(), collected.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
  Best overall;
  for (const auto& [chunk, local] : collected)
    if (local.any && (!overall.any || local.value > overall.value)) overall = local;
  out.value = overall.value;
  out.witness = Profile(NodeSet(n, colex_unrank(overall.rank, b)));
  out.reached_ceiling = out.value == out.ceiling;
  return out;
}

namespace {

struct Accumulator {
  std::uint64_t se_count = 0;
  std::optional<std::size_t> min_se, max_se;
  std::uint64_t min_rank = 0, max_rank = 0;
  std::size_t opt = 0;
  std::uint64_t opt_rank = 0;
  bool any = false;
  std::uint64_t mixed = 0;
  std::optional<std::uint64_t> mixed_rank;

  // `later` covers strictly larger ranks, so ties keep this side's witness.
  void merge(const Accumulator& later) {
    if (!later.any) return;
    if (!any || later.opt > opt) {
      opt = later.opt;
      opt_rank = later.opt_rank;
    }
    any = true;
    se_count += later.se_count;
    if (later.min_se && (!min_se || *later.min_se < *min_se)) {
      min_se = later.min_se;
      min_rank = later.min_rank;
    }
    if (later.max_se && (!max_se || *later.max_se > *max_se)) {
      max_se = later.max_se;
      max_rank = later.max_rank;
    }
    mixed += later.mixed;
    if (!mixed_rank) mixed_rank = later.mixed_rank;
  }
};

}  // namespace

AnalysisReport enumerate_equilibria(const GameSpec& game, const EnumerationOptions& options) {
  const std::uint64_t total = checked_profile_count(game, options.budget);
  const std::size_t n = game.n(), b = game.blue_count();

  std::mutex m;
  std::vector<std::pair<std::size_t, Accumulator>> collected;
  detail::parallel_chunks(total, options.threads, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
    Accumulator acc;
    for_each_subset(n, b, begin, end, [&](std::uint64_t rank, const std::vector<Node>& blue, const NodeSet& set) {
      detail::SwapScan scan(game, set);
      const std::size_t d = scan_doi(scan, n);
      if (!acc.any || d > acc.opt) {
        acc.opt = d;
        acc.opt_rank = rank;
      }
      acc.any = true;
      if (!scan_is_se(scan, blue, set, n)) return;
      ++acc.se_count;
      if (!acc.min_se || d < *acc.min_se) {
        acc.min_se = d;
        acc.min_rank = rank;
      }
      if (!acc.max_se || d > *acc.max_se) {
        acc.max_se = d;
        acc.max_rank = rank;
      }
      bool blue_seg = false, red_seg = false;
      for (Node v = 0; v < n; ++v)
        if (scan.segregated(v)) (set.contains(v) ? blue_seg : red_seg) = true;
      if (blue_seg && red_seg) {
        ++acc.mixed;
        if (!acc.mixed_rank) acc.mixed_rank = rank;
      }
    });
    std::lock_guard lock(m);
    collected.emplace_back(chunk, std::move(acc));
  });
  std::sort(collected.begin(), collected.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
  Accumulator all;
  for (const auto& [chunk, acc] : collected) all.merge(acc);

  const auto unrank = [&](std::uint64_t rank) { return Profile(NodeSet(n, colex_unrank(rank, b))); };
  AnalysisReport r;
  r.n = n;
  r.m = game.graph().m();
  r.b = b;
  r.lambda = game.lambda().value();
  r.profile_count = total;
  r.se_count = all.se_count;
  r.se_exists = all.se_count > 0;
  r.opt_doi = all.opt;
  r.opt_witness = unrank(all.opt_rank);
  if (r.se_exists) {
    r.min_se_doi = all.min_se;
    r.max_se_doi = all.max_se;
    r.min_se_witness = unrank(all.min_rank);
    r.max_se_witness = unrank(all.max_rank);
    const auto as_int = [](std::size_t v) { return static_cast<std::int64_t>(v); };
    r.poa = Rational(as_int(r.opt_doi), as_int(*r.min_se_doi));
    r.pos = Rational(as_int(r.opt_doi), as_int(*r.max_se_doi));
  }
  r.mixed_segregation_se = all.mixed;
  if (all.mixed_rank) r.mixed_segregation_witness = unrank(*all.mixed_rank);
  return r;
}

std::vector<Profile> all_equilibria(const GameSpec& game, const EnumerationOptions& options) {
  const std::uint64_t total = checked_profile_count(game, options.budget);
  const std::size_t n = game.n(), b = game.blue_count();
  std::mutex m;
  std::vector<std::pair<std::size_t, std::vector<Profile>>> collected;
  detail::parallel_chunks(total, options.threads, [&](std::size_t chunk, std::uint64_t begin, std::uint64_t end) {
    std::vector<Profile> found;
    for_each_subset(n, b, begin, end, [&](std::uint64_t, const std::vector<Node>& blue, const NodeSet& set) {
      detail::SwapScan scan(game, set);
      if (scan_is_se(scan, blue, set, n)) found.emplace_back(set);
    });
    std::lock_guard lock(m);
    collected.emplace_back(chunk, std::move(found));
  });
  std::sort(collected.begin(), collected.end(), [](const auto& a, const auto& c) { return a.first < c.first; });
  std::vector<Profile> out;
  for (auto& [chunk, found] : collected)
    for (auto& p : found) out.push_back(std::move(p));
  return out;
}

std::vector<BoundCheck> bound_checks(const GameSpec& game, const AnalysisReport& report, std::uint64_t alpha_budget) {
  const Graph& g = game.graph();
  const auto deg = degree_profile(g);
  const auto n = static_cast<std::int64_t>(g.n());
  const auto b = static_cast<std::int64_t>(game.blue_count());
  const auto big_delta = static_cast<std::int64_t>(deg.max_degree);
  const auto small_delta = static_cast<std::int64_t>(deg.min_degree);
  const Rational lambda = game.lambda().value();
  const Rational half(1, 2);

  std::vector<BoundCheck> out;
  const auto add = [&](std::string name, std::string relation, Rational measured, Rational bound) {
    bool ok = relation == "<=" ? measured <= bound : relation == ">=" ? measured >= bound : measured == bound;
    out.push_back({std::move(name), std::move(relation), measured, bound, ok});
  };
  const auto as_rat = [](std::size_t v) { return Rational(static_cast<std::int64_t>(v)); };

  add("opt-doi-ceiling", "<=", as_rat(report.opt_doi), std::min(Rational((big_delta + 1) * b), Rational(n)));
  add("one-color-segregation", "==", as_rat(report.mixed_segregation_se), Rational(0));

  if (report.se_exists) {
    add("se-doi-floor", ">=", as_rat(*report.min_se_doi),
        std::max(Rational((big_delta + 1) * b, big_delta), Rational(b + 1)));
    add("poa-general", "<=", *report.poa,
        std::min({Rational(big_delta), Rational(n, b + 1), Rational((big_delta + 1) * b, b + 1)}));
    if (deg.regular && lambda < Rational(1, small_delta))
      add("poa-regular", "<=", *report.poa, std::min(Rational(small_delta + 1, 2), Rational(n, 2 * b)));
  }

  const Rational se_flag(report.se_exists ? 1 : 0);
  if (deg.almost_regular && lambda <= half) {
    add("se-exists-almost-regular", "==", se_flag, Rational(1));
    if (report.se_exists && big_delta <= 3) add("pos-almost-cubic", "==", *report.pos, Rational(1));
  }
  if (bipartition(g) && lambda == half) {
    add("se-exists-bipartite", "==", se_flag, Rational(1));
    if (report.se_exists) add("pos-bipartite", "<=", *report.pos, Rational(2));
  }

  std::optional<std::size_t> alpha;
  try {
    alpha = independence_number(g, alpha_budget).size;
  } catch (const BudgetExceeded&) {
  }
  if (alpha) {
    const auto a = static_cast<std::int64_t>(*alpha);
    const bool in_is_range = lambda >= Rational(1, small_delta + 1) && lambda <= half;
    if (in_is_range && a >= b) add("se-exists-independent-set", "==", se_flag, Rational(1));
    if (in_is_range && deg.almost_regular && b >= a && report.se_exists)
      add("pos-almost-regular-large-b", "==", *report.pos, Rational(1));
  }
  return out;
}

AnalysisReport analyze(const GameSpec& game, const EnumerationOptions& options, std::uint64_t alpha_budget) {
  AnalysisReport report = enumerate_equilibria(game, options);
  report.bounds = bound_checks(game, report, alpha_budget);
  return report;
}

}  // namespace schelling
