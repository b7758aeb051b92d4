#include <doctest.h>

#include "../corpus.hpp"
#include "../oracle.hpp"
#include "schelling/errors.hpp"
#include "schelling/gallery.hpp"
#include "schelling/game.hpp"

using namespace schelling;

namespace {

GameSpec ring6(std::size_t b, Lambda l, PeakShape shape = PeakShape::Tent) { return GameSpec(ring_graph(6), b, l, shape); }

}  // namespace

TEST_SUITE("rational") {
  TEST_CASE("parse and print") {
    CHECK(parse_rational("3/6") == Rational(1, 2));
    CHECK(parse_rational("2") == Rational(2));
    CHECK(to_string(Rational(6, 8)) == "3/4");
    CHECK(to_string(Rational(3)) == "3");
    CHECK_THROWS_AS(parse_rational("1/0"), InvalidInput);
    CHECK_THROWS_AS(parse_rational("a/2"), InvalidInput);
    CHECK_THROWS_AS(parse_rational(""), InvalidInput);
  }

  TEST_CASE("lambda must be strictly inside (0, 1)") {
    CHECK_THROWS_AS(Lambda(0, 1), InvalidInput);
    CHECK_THROWS_AS(Lambda(1, 1), InvalidInput);
    CHECK_THROWS_AS(Lambda::parse("3/2"), InvalidInput);
    CHECK(Lambda::parse("2/4").to_string() == "1/2");
  }
}

TEST_SUITE("game") {
  TEST_CASE("game spec validation") {
    CHECK_THROWS_AS(GameSpec(ring_graph(6), 4, Lambda(1, 2)), InvalidInput);
    CHECK_THROWS_AS(GameSpec(ring_graph(6), 0, Lambda(1, 2)), InvalidInput);
    CHECK_THROWS_AS(GameSpec(Graph(4, {{0, 1}, {2, 3}}), 1, Lambda(1, 2)), InvalidInput);
    CHECK_THROWS_AS(GameSpec(Graph(1, {}), 1, Lambda(1, 2)), InvalidInput);
    const GameSpec g = ring6(3, Lambda(1, 2));
    CHECK(g.red_count() == 3);
    CHECK_THROWS_AS(g.validate(Profile::parse("BBRRRR")), InvalidInput);
    CHECK_THROWS_AS(g.validate(Profile::parse("BBBRR")), InvalidInput);
    CHECK_NOTHROW(g.validate(Profile::parse("BRBRBR")));
  }

  TEST_CASE("profile parsing and swaps") {
    Profile p = Profile::parse("BBRRRR");
    CHECK(p.to_string() == "BBRRRR");
    CHECK(p.blue_nodes() == std::vector<Node>{0, 1});
    p.swap_colors(1, 3);
    CHECK(p.to_string() == "BRRBRR");
    p.swap_colors(2, 3);
    CHECK(p.to_string() == "BRBRRR");
    p.swap_colors(4, 5);
    CHECK(p.to_string() == "BRBRRR");
    CHECK_THROWS_AS(Profile::parse("BXR"), InvalidInput);
    CHECK(std::hash<Profile>{}(Profile::parse("BR")) == std::hash<Profile>{}(Profile::parse("BR")));
  }

  TEST_CASE("same-color fraction") {
    const Graph g = ring_graph(6);
    const Profile p = Profile::parse("BBRRRR");
    CHECK(same_color_fraction(g, p, 0) == Fraction{2, 3});
    CHECK(same_color_fraction(g, p, 3) == Fraction{3, 3});
    CHECK(same_color_fraction(g, p, 3).segregated());
    CHECK(same_color_fraction(complete_graph(4), Profile::parse("BRRR"), 0) == Fraction{1, 4});
  }

  TEST_CASE("peak score examples") {
    const Lambda half(1, 2);
    CHECK(peak_score({2, 3}, half) == Rational(1, 3));
    CHECK(peak_score({1, 3}, half) == Rational(1, 3));
    for (std::int64_t y = 1; y <= 8; ++y) CHECK(peak_score({y, y}, Lambda(2, 7)) == Rational(0));
    CHECK(peak_score({3, 4}, Lambda(3, 4)) == Rational(3, 4));
  }

  TEST_CASE("utility values") {
    const Lambda half(1, 2);
    CHECK(utility_value({1, 3}, half, PeakShape::Tent) == Rational(2, 3));
    CHECK(utility_value({1, 3}, half, PeakShape::SquaredTent) == Rational(4, 9));
    for (const auto shape : {PeakShape::Tent, PeakShape::SquaredTent}) {
      CHECK(utility_value({2, 5}, Lambda(2, 5), shape) == Rational(1));
      CHECK(utility_value({3, 6}, half, shape) == Rational(1));
      CHECK(utility_value({4, 4}, half, shape) == Rational(0));
    }
  }

  TEST_CASE("peak shape names") {
    CHECK(to_string(PeakShape::SquaredTent) == "squared-tent");
    CHECK(parse_peak_shape("tent") == PeakShape::Tent);
    CHECK_THROWS_AS(parse_peak_shape("plateau"), InvalidInput);
  }

  TEST_CASE("classify") {
    const Lambda half(1, 2);
    CHECK(classify({2, 3}, half) == PeakClass{PeakSide::Above, false});
    CHECK(classify({3, 6}, half) == PeakClass{PeakSide::At, false});
    CHECK(classify({1, 3}, half) == PeakClass{PeakSide::Below, false});
    CHECK(classify({4, 4}, Lambda(9, 10)) == PeakClass{PeakSide::Above, true});
  }

  TEST_CASE("predicted swap fraction") {
    CHECK(predicted_swap_fraction({2, 3}, false) == Fraction{2, 3});
    CHECK(predicted_swap_fraction({1, 3}, true) == Fraction{2, 3});
    CHECK(predicted_swap_fraction({3, 5}, false) == Fraction{3, 5});
  }

  TEST_CASE("partner fraction branches over every small fraction") {
    const Rational half(1, 2);
    for (std::int64_t y = 1; y <= 12; ++y)
      for (std::int64_t x = 1; x <= y; ++x)
        for (bool adj : {false, true}) {
          if (adj && y == 1) continue;  // adjacency needs a neighbor
          const Rational before(x, y);
          const Rational after = predicted_swap_fraction({x, y}, adj).value();
          CAPTURE(x);
          CAPTURE(y);
          CAPTURE(adj);
          if (before < half) CHECK(after > half);
          if (before > half) {
            if (y == 2 * x - 1 && !adj)
              CHECK(after == before);
            else
              CHECK(after <= half);
          }
        }
  }

  TEST_CASE("partner fraction matches recomputation after a swap") {
    for (const auto& [name, g] : corpus::graphs(9)) {
      for (std::size_t b = 1; b <= g.n() / 2; ++b) {
        oracle::for_each_mask(g.n(), b, [&](oracle::Mask m) {
          const Profile p = oracle::profile_of(m, g.n());
          for (Node u = 0; u < g.n(); ++u)
            for (Node v = 0; v < g.n(); ++v) {
              if (p.is_blue(u) == p.is_blue(v)) continue;
              Profile q = p;
              q.swap_colors(u, v);
              const Fraction predicted = predicted_swap_fraction(same_color_fraction(g, p, u), g.has_edge(u, v));
              if (!(same_color_fraction(g, q, u) == predicted)) {
                FAIL_CHECK(name << " " << p.to_string() << " u=" << u << " v=" << v);
                return;
              }
            }
        });
      }
    }
  }

  TEST_CASE("score keys order fractions like the utility oracle") {
    for (const auto& [name, g] : corpus::graphs(12)) {
      for (const auto& l : corpus::lambdas()) {
        const GameSpec game(g, 1, l);
        std::vector<Fraction> fs;
        for (std::size_t d : distinct_degrees(g))
          for (std::int64_t x = 1; x <= static_cast<std::int64_t>(d) + 1; ++x) fs.push_back({x, static_cast<std::int64_t>(d) + 1});
        for (const auto& a : fs)
          for (const auto& c : fs) {
            const Rational ua = oracle::utility({a.same, a.size}, l.value());
            const Rational uc = oracle::utility({c.same, c.size}, l.value());
            CHECK((game.score_key(a) < game.score_key(c)) == (ua < uc));
            CHECK((game.score_key(a) == game.score_key(c)) == (ua == uc));
          }
      }
    }
  }

  TEST_CASE("both display peaks order fractions identically") {
    for (const auto& l : corpus::lambdas())
      for (std::int64_t y1 = 1; y1 <= 9; ++y1)
        for (std::int64_t x1 = 1; x1 <= y1; ++x1)
          for (std::int64_t y2 = 1; y2 <= 9; ++y2)
            for (std::int64_t x2 = 1; x2 <= y2; ++x2) {
              const Fraction a{x1, y1}, c{x2, y2};
              const bool by_score = peak_score(a, l) < peak_score(c, l);
              CHECK(by_score == (utility_value(a, l, PeakShape::Tent) < utility_value(c, l, PeakShape::Tent)));
              CHECK(by_score ==
                    (utility_value(a, l, PeakShape::SquaredTent) < utility_value(c, l, PeakShape::SquaredTent)));
            }
  }

  TEST_CASE("doi and potential examples") {
    const Graph g = ring_graph(6);
    CHECK(doi(g, Profile::parse("BBRRRR")) == 4);
    CHECK(doi(g, Profile::parse("RBRRBR")) == 6);
    CHECK(potential(g, Profile::parse("BBRRRR")) == 4);
    CHECK(potential(g, Profile::parse("RBRRBR")) == 2);
    CHECK(potential(complete_graph(4), Profile::parse("BRRR")) == 3);
    CHECK(doi(complete_graph(4), Profile::parse("BRRR")) == 4);
    const auto s = segregation(g, Profile::parse("BBRRRR"));
    CHECK(s.blue == 0);
    CHECK(s.red == 2);
  }

  TEST_CASE("doi and potential agree with the oracle") {
    for (const auto& [name, g] : corpus::graphs(10))
      oracle::for_each_mask(g.n(), g.n() / 2, [&](oracle::Mask m) {
        const Profile p = oracle::profile_of(m, g.n());
        CHECK(doi(g, p) == oracle::doi(g, m));
        CHECK(potential(g, p) == oracle::phi(g, m));
        const auto s = segregation(g, p);
        CHECK(doi(g, p) + s.blue + s.red == g.n());
      });
  }

  TEST_CASE("sum welfare") {
    CHECK(sum_welfare(GameSpec(path_graph(2), 1, Lambda(1, 2)), Profile::parse("BR")) == Rational(2));
    CHECK(sum_welfare(ring6(2, Lambda(1, 2)), Profile::parse("BBRRRR")) == Rational(8, 3));
    const Profile p = Profile::parse("BRRBRR");
    for (const auto& l : corpus::lambdas())
      CHECK(sum_welfare(ring6(2, l, PeakShape::SquaredTent), p) <= sum_welfare(ring6(2, l), p));
  }

  TEST_CASE("with_lambda and with_display_peak") {
    const GameSpec g = ring6(3, Lambda(1, 2));
    CHECK(g.with_lambda(Lambda(3, 4)).lambda() == Lambda(3, 4));
    CHECK(g.with_display_peak(PeakShape::SquaredTent).display_peak() == PeakShape::SquaredTent);
    CHECK(&g.with_display_peak(PeakShape::SquaredTent).graph() == &g.graph());
  }
}
