#include <doctest.h>

#include <numeric>

#include "../corpus.hpp"
#include "../oracle.hpp"
#include "schelling/analysis.hpp"
#include "schelling/construct.hpp"
#include "schelling/errors.hpp"
#include "schelling/gallery.hpp"

using namespace schelling;

namespace {

bool bound_holds(const Graph& g, const KPartition& kp, Node v, std::size_t k) {
  return kp.internal_degree[v] <= g.degree(v) / k;
}

std::size_t count_internal(const Graph& g, const KPartition& kp, Node v) {
  const auto part = kp.part_of(v);
  std::size_t c = 0;
  for (Node w : g.neighbors(v))
    if (kp.part_of(w) == part) ++c;
  return c;
}

// Parts disjointly cover U and the internal-degree table is consistent.
void check_partition(const Graph& g, const NodeSet& U, const KPartition& kp, std::size_t k) {
  REQUIRE(kp.parts.size() == k);
  NodeSet seen(g.n());
  std::size_t total = 0;
  for (const auto& part : kp.parts) {
    CHECK_FALSE(part.intersects(seen));
    seen |= part;
    total += part.size();
  }
  CHECK(seen == U);
  CHECK(total == U.size());
  std::size_t internal = 0;
  U.for_each([&](Node v) {
    CHECK(kp.internal_degree[v] == count_internal(g, kp, v));
    internal += kp.internal_degree[v];
  });
  CHECK(kp.internal_edges() * 2 == internal);
}

}  // namespace

TEST_SUITE("independent-set") {
  TEST_CASE("placement examples") {
    const GameSpec ring(ring_graph(8), 4, Lambda(1, 2));
    const Profile p = independent_set_placement(ring, NodeSet(8, {0, 2, 4, 6}));
    CHECK(is_swap_equilibrium(ring, p).is_se);
    CHECK(doi(ring.graph(), p) == 8);

    const GameSpec star(star_graph(3), 1, Lambda(1, 2));
    CHECK(independent_set_placement(star, NodeSet(4, {0})).is_blue(0));
    // The red majority on the independent leaves works just as well.
    const Profile leaves = independent_set_placement(star, NodeSet(4, {1, 2, 3}));
    CHECK(leaves.is_blue(0));

    // Peak exactly at 1/(delta+1).
    const GameSpec boundary(petersen_graph(), 4, Lambda(1, 4));
    const auto alpha = independence_number(petersen_graph());
    CHECK(is_swap_equilibrium(boundary, independent_set_placement(boundary, alpha.witness)).is_se);
  }

  TEST_CASE("placement guards") {
    const GameSpec ring(ring_graph(8), 3, Lambda(1, 2));
    CHECK_THROWS_AS(independent_set_placement(ring, NodeSet(8, {0, 1, 4})), PreconditionViolation);
    CHECK_THROWS_AS(independent_set_placement(ring, NodeSet(8, {0, 2})), PreconditionViolation);
    CHECK_THROWS_AS(independent_set_placement(GameSpec(ring_graph(8), 3, Lambda(3, 5)), NodeSet(8, {0, 2, 4})),
                    PreconditionViolation);
    CHECK_THROWS_AS(independent_set_placement(GameSpec(ring_graph(8), 3, Lambda(1, 4)), NodeSet(8, {0, 2, 4})),
                    PreconditionViolation);
    try {
      independent_set_placement(ring, NodeSet(8, {0, 1, 4}));
    } catch (const PreconditionViolation& e) {
      CHECK(e.guard() == "set-independent");
    }
  }
}

TEST_SUITE("bipartite") {
  TEST_CASE("from the optimum of the gallery instance") {
    const auto inst = pos_bipartite_instance(2);
    const Profile opt = inst.profiles.at("optimum");
    const Profile se = bipartite_se_from_optimum(inst.game, opt);
    CHECK(oracle::is_se(inst.game.graph(), oracle::mask_of(se), Rational(1, 2)));
    CHECK(doi(inst.game.graph(), se) >= 4);
  }

  TEST_CASE("even ring optimum yields full integration") {
    const GameSpec g(ring_graph(8), 4, Lambda(1, 2));
    const Profile se = bipartite_se_from_optimum(g, Profile::parse("BRBRBRBR"));
    CHECK(doi(g.graph(), se) == 8);
  }

  TEST_CASE("half the optimum across bipartite corpus graphs") {
    for (const auto& [name, g] : corpus::graphs(11)) {
      if (!bipartition(g)) continue;
      for (std::size_t b = 1; b <= g.n() / 2; ++b) {
        const GameSpec game(g, b, Lambda(1, 2));
        const auto opt = optimal_doi(game);
        const Profile se = bipartite_se_from_optimum(game, opt.witness);
        CAPTURE(name);
        CAPTURE(b);
        CHECK(oracle::is_se(g, oracle::mask_of(se), Rational(1, 2)));
        CHECK(2 * doi(g, se) >= opt.value);
      }
    }
  }

  TEST_CASE("guards") {
    CHECK_THROWS_AS(bipartite_se_from_optimum(GameSpec(ring_graph(5), 2, Lambda(1, 2)), Profile::parse("BRBRR")),
                    PreconditionViolation);
    CHECK_THROWS_AS(bipartite_se_from_optimum(GameSpec(ring_graph(6), 2, Lambda(1, 3)), Profile::parse("BRBRRR")),
                    PreconditionViolation);
  }
}

TEST_SUITE("phi-min") {
  TEST_CASE("examples") {
    const GameSpec ring(ring_graph(8), 4, Lambda(1, 2));
    const Profile p = phi_minimum_profile(ring);
    CHECK(potential(ring.graph(), p) == 0);
    CHECK(doi(ring.graph(), p) == 8);
    for (const auto& l : {Lambda(1, 4), Lambda(1, 3), Lambda(1, 2)}) {
      const GameSpec k4(complete_graph(4), 2, l);
      const Profile q = phi_minimum_profile(k4);
      CHECK(potential(k4.graph(), q) == 2);
      CHECK(doi(k4.graph(), q) == 4);
    }
  }

  TEST_CASE("global minimiser matches the oracle minimum") {
    for (const auto& [name, g] : corpus::graphs(10))
      for (std::size_t b = 1; b <= g.n() / 2; ++b) {
        const GameSpec game(g, b, Lambda(1, 2));
        std::size_t best = SIZE_MAX;
        oracle::for_each_mask(g.n(), b, [&](oracle::Mask m) { best = std::min(best, oracle::phi(g, m)); });
        CHECK(potential(g, phi_minimum_profile(game)) == best);
      }
  }

  TEST_CASE("local search ends in an equilibrium") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const GameSpec g(random_almost_regular_graph(12, 3, seed), 1 + seed % 6, Lambda(1, 3));
      PhiMinimization how;
      how.mode = PhiMinimization::Mode::LocalSearch;
      how.seed = seed;
      CHECK(is_swap_equilibrium(g, phi_minimum_profile(g, how)).is_se);
    }
    PhiMinimization how;
    how.mode = PhiMinimization::Mode::LocalSearch;
    CHECK_THROWS_AS(phi_minimum_profile(GameSpec(star_graph(4), 2, Lambda(1, 2)), how), PreconditionViolation);
  }
}

TEST_SUITE("k-max-cut") {
  TEST_CASE("greedy examples") {
    const Graph tri = complete_graph(3);
    const auto a = greedy_k_max_cut(tri, NodeSet::full(3), 2);
    for (Node v = 0; v < 3; ++v) CHECK(a.internal_degree[v] <= 1);
    const Graph k4 = complete_graph(4);
    const auto b = greedy_k_max_cut(k4, NodeSet::full(4), 2);
    CHECK(b.parts[0].size() == 2);
    CHECK(b.parts[1].size() == 2);
    const auto c = greedy_k_max_cut(ring_graph(5), NodeSet::full(5), 7);
    for (Node v = 0; v < 5; ++v) CHECK(c.internal_degree[v] == 0);
    CHECK_THROWS_AS(greedy_k_max_cut(k4, NodeSet::full(4), 0), PreconditionViolation);
  }

  TEST_CASE("greedy guarantee on random graphs and subsets") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const Graph g = random_connected_graph(6 + seed % 15, seed % 25, seed);
      Rng rng(seed);
      NodeSet U(g.n());
      for (Node v = 0; v < g.n(); ++v)
        if (rng.below(4) != 0) U.insert(v);
      if (U.empty()) U.insert(0);
      for (std::size_t k = 1; k <= 4; ++k) {
        const auto kp = greedy_k_max_cut(g, U, k);
        check_partition(g, U, kp, k);
        U.for_each([&](Node v) { CHECK(bound_holds(g, kp, v, k)); });
      }
    }
  }

  TEST_CASE("balanced examples") {
    const auto ring = balanced_k_max_cut(ring_graph(6), NodeSet::full(6), 2);
    CHECK(ring.partition.internal_edges() == 0);
    const auto k4 = balanced_k_max_cut(complete_graph(4), NodeSet::full(4), 2);
    CHECK(k4.partition.parts[0].size() == 2);
    CHECK(k4.partition.parts[1].size() == 2);
    const auto tiny = balanced_k_max_cut(ring_graph(6), NodeSet(6, {0, 1}), 3);
    CHECK(tiny.partition.internal_edges() == 0);
    CHECK_FALSE(tiny.partition.parts[tiny.distinguished].empty());
    CHECK_THROWS_AS(balanced_k_max_cut(ring_graph(6), NodeSet(6, {0}), 2), PreconditionViolation);
  }

  TEST_CASE("balanced guarantee on random graphs") {
    for (std::uint64_t seed = 0; seed < 150; ++seed) {
      const Graph g = random_connected_graph(4 + seed % 17, seed % 30, seed + 1000);
      for (std::size_t k = 2; k <= 4; ++k) {
        const NodeSet U = NodeSet::full(g.n());
        const auto cut = balanced_k_max_cut(g, U, k);
        check_partition(g, U, cut.partition, k);
        for (const auto& part : cut.partition.parts) CHECK(part.size() >= g.n() / k);
        const auto& d = cut.partition.parts[cut.distinguished];
        CHECK_FALSE(d.empty());
        d.for_each([&](Node v) { CHECK(bound_holds(g, cut.partition, v, k)); });
      }
    }
  }
}

TEST_SUITE("hierarchical") {
  TEST_CASE("spread parts") {
    CHECK(blue_spread_parts(ring_graph(12), Lambda(1, 2)) == 3);
    CHECK(blue_spread_parts(petersen_graph(), Lambda(1, 2)) == 2);
    CHECK(blue_spread_parts(petersen_graph(), Lambda(1, 4)) == 4);
    CHECK_FALSE(blue_spread_parts(petersen_graph(), Lambda(1, 5)));
  }

  TEST_CASE("returns a verified equilibrium at least as good as the best candidate") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
      const Graph g = seed % 2 ? random_regular_graph(12, 3, seed) : random_almost_regular_graph(11, 3, seed);
      for (std::size_t b : {2, 3}) {
        const GameSpec game(g, b, Lambda(1, 2));
        const auto opt = optimal_doi(game);
        const auto res = hierarchical_pos_construction(game, opt.witness);
        CHECK(is_swap_equilibrium(game, res.profile).is_se);
        if (res.constructed) {
          for (Node v : res.constructed->blue_nodes())
            CHECK(classify(same_color_fraction(g, *res.constructed, v), game.lambda()).side != PeakSide::Above);
          CHECK(doi(g, res.profile) >= doi(g, *res.constructed));
        }
        if (is_swap_equilibrium(game, opt.witness).is_se) CHECK(doi(g, res.profile) == opt.value);
      }
    }
  }

  TEST_CASE("ring of twelve") {
    const GameSpec game(ring_graph(12), 2, Lambda(1, 2));
    const auto res = hierarchical_pos_construction(game, optimal_doi(game).witness);
    CHECK(is_swap_equilibrium(game, res.profile).is_se);
    CHECK(2 * doi(game.graph(), res.profile) >= *enumerate_equilibria(game).max_se_doi);
  }

  TEST_CASE("guards") {
    const GameSpec star(star_graph(5), 2, Lambda(1, 2));
    CHECK_THROWS_AS(hierarchical_pos_construction(star, optimal_doi(star).witness), PreconditionViolation);
    const GameSpec big_b(ring_graph(8), 4, Lambda(1, 2));
    try {
      hierarchical_pos_construction(big_b, optimal_doi(big_b).witness);
      FAIL("expected a precondition violation");
    } catch (const PreconditionViolation& e) {
      CHECK(e.guard() == "b-below-alpha");
    }
  }
}

TEST_SUITE("repair") {
  TEST_CASE("from the optimum reaches the optimum value") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Graph g = random_almost_regular_graph(8 + seed % 5, 2, seed);
      const GameSpec game(g, 1 + seed % (g.n() / 2), seed % 2 ? Lambda(1, 3) : Lambda(1, 2));
      const auto opt = optimal_doi(game);
      const auto res = se_repair_bounded_degree(game, opt.witness);
      CHECK(oracle::is_se(g, oracle::mask_of(res.profile), game.lambda().value()));
      CHECK(doi(g, res.profile) == opt.value);
      CHECK(res.steps.size() <= g.m());
    }
  }

  TEST_CASE("random starts never lose integration") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Graph g = random_regular_graph(10, 3, seed);
      const GameSpec game(g, 2 + seed % 4, Lambda(1, 3));
      Rng rng(seed);
      std::vector<Node> order(10);
      std::iota(order.begin(), order.end(), Node{0});
      rng.shuffle(order);
      order.resize(game.blue_count());
      const Profile start = Profile::from_blue(10, order);
      const auto res = se_repair_bounded_degree(game, start);
      CHECK(is_swap_equilibrium(game, res.profile).is_se);
      std::size_t phi = potential(g, start);
      std::size_t d = doi(g, start);
      for (const auto& s : res.steps) {
        CHECK(s.phi_after < phi);
        CHECK(s.doi_after >= d);
        phi = s.phi_after;
        d = s.doi_after;
      }
    }
  }

  TEST_CASE("equilibrium start is returned unchanged") {
    const GameSpec game(ring_graph(6), 2, Lambda(1, 2));
    const Profile se = Profile::parse("BRRBRR");
    const auto res = se_repair_bounded_degree(game, se);
    CHECK(res.profile == se);
    CHECK(res.steps.empty());
  }

  TEST_CASE("guards") {
    CHECK_THROWS_AS(se_repair_bounded_degree(GameSpec(complete_graph(5), 2, Lambda(1, 2)), Profile::parse("BBRRR")),
                    PreconditionViolation);
    CHECK_THROWS_AS(se_repair_bounded_degree(GameSpec(ring_graph(6), 2, Lambda(2, 3)), Profile::parse("BBRRRR")),
                    PreconditionViolation);
  }
}

TEST_SUITE("certificate") {
  TEST_CASE("reports the equilibrium status") {
    const GameSpec game(ring_graph(6), 3, Lambda(3, 4));
    const auto c = certify(game, Profile::parse("BBBRRR"));
    CHECK_FALSE(c.is_se);
    CHECK(c.counterexample);
    CHECK(c.phi == 4);
    CHECK(c.doi == 4);
  }
}
