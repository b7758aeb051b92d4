#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

#include "schelling/graph.hpp"
#include "schelling/node_set.hpp"

namespace schelling {

// Compare only against other Rationals: with Boost 1.74 in C++20 mode,
// rational == int (and !=) recurses forever.
using Rational = boost::rational<std::int64_t>;

// "p/q" (or "p" for integers). Throws InvalidInput on malformed text.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& r);

// Peak position, an exact rational strictly between 0 and 1.
class Lambda {
 public:
  explicit Lambda(Rational value);
  Lambda(std::int64_t num, std::int64_t den) : Lambda(Rational(num, den)) {}
  static Lambda parse(std::string_view text) { return Lambda(parse_rational(text)); }

  const Rational& value() const noexcept { return value_; }
  std::int64_t num() const noexcept { return value_.numerator(); }
  std::int64_t den() const noexcept { return value_.denominator(); }
  std::string to_string() const { return schelling::to_string(value_); }

  friend bool operator==(const Lambda&, const Lambda&) = default;

 private:
  Rational value_;
};

enum class Color : std::uint8_t { Red, Blue };

// Concrete single-peaked utilities used for display only. Tent rises
// linearly to 1 at the peak, SquaredTent is its square; decisions never
// evaluate either.
enum class PeakShape { Tent, SquaredTent };

std::string_view to_string(PeakShape shape);
PeakShape parse_peak_shape(std::string_view text);

// Same-color count x (including the agent) over closed-neighborhood size y,
// kept unreduced: 3/6 and 1/2 are different fractions with equal value.
struct Fraction {
  std::int64_t same = 0;
  std::int64_t size = 0;

  Rational value() const { return Rational(same, size); }
  bool segregated() const noexcept { return same == size; }
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Bi-coloring with a fixed number of blue nodes. Agents are identified with
// the node they occupy.
class Profile {
 public:
  Profile() = default;
  explicit Profile(NodeSet blue) : blue_(std::move(blue)) {}
  static Profile from_blue(std::size_t n, std::span<const Node> blue_nodes);
  // "BBRRRR": one character per node, B or R.
  static Profile parse(std::string_view colors);

  std::size_t n() const noexcept { return blue_.universe(); }
  std::size_t blue_count() const noexcept { return blue_.size(); }
  bool is_blue(Node v) const noexcept { return blue_.contains(v); }
  Color color(Node v) const noexcept { return is_blue(v) ? Color::Blue : Color::Red; }
  const NodeSet& blue() const noexcept { return blue_; }
  std::vector<Node> blue_nodes() const { return blue_.to_vector(); }

  // Exchanges the colors of u and v.
  void swap_colors(Node u, Node v) {
    if (is_blue(u) != is_blue(v)) {
      blue_.flip(u);
      blue_.flip(v);
    }
  }

  std::string to_string() const;

  friend bool operator==(const Profile&, const Profile&) = default;

 private:
  NodeSet blue_;
};

// A game (G, b, Lambda). Immutable; copies share the graph.
class GameSpec {
 public:
  // Throws InvalidInput unless G is connected, n >= 2 and 1 <= b <= n/2.
  GameSpec(Graph graph, std::size_t blue_count, Lambda lambda, PeakShape display = PeakShape::Tent);

  const Graph& graph() const noexcept { return *graph_; }
  std::size_t n() const noexcept { return graph_->n(); }
  std::size_t blue_count() const noexcept { return blue_count_; }
  std::size_t red_count() const noexcept { return n() - blue_count_; }
  const Lambda& lambda() const noexcept { return lambda_; }
  PeakShape display_peak() const noexcept { return display_; }

  GameSpec with_display_peak(PeakShape shape) const;
  GameSpec with_lambda(Lambda lambda) const;

  // Throws InvalidInput when p has the wrong size or blue count.
  void validate(const Profile& p) const;

  // Integer key ordered exactly like peak_score(f, lambda) for every
  // fraction realisable on this graph. Hot loops compare these instead of
  // rationals.
  int score_key(Fraction f) const noexcept {
    return (*score_table_)[static_cast<std::size_t>(f.size)][static_cast<std::size_t>(f.same)];
  }

 private:
  std::shared_ptr<const Graph> graph_;
  std::size_t blue_count_;
  Lambda lambda_;
  PeakShape display_;
  std::shared_ptr<const std::vector<std::vector<int>>> score_table_;  // [y][x]
};

Fraction same_color_fraction(const Graph& g, const Profile& p, Node v);
inline Fraction same_color_fraction(const GameSpec& game, const Profile& p, Node v) {
  return same_color_fraction(game.graph(), p, v);
}

// x/y below the peak, Lambda(1 - x/y)/(1 - Lambda) above it. Strict order on
// peak scores equals the utility order of every admissible single-peaked p.
Rational peak_score(Fraction f, const Lambda& lambda);

// Display utility: Tent = score / Lambda, SquaredTent = (score / Lambda)^2.
Rational utility_value(Fraction f, const Lambda& lambda, PeakShape shape);
inline Rational utility_value(Fraction f, const GameSpec& game) {
  return utility_value(f, game.lambda(), game.display_peak());
}

enum class PeakSide { Below, At, Above };
std::string_view to_string(PeakSide side);

struct PeakClass {
  PeakSide side;
  bool segregated;
  friend bool operator==(const PeakClass&, const PeakClass&) = default;
};

PeakClass classify(Fraction f, const Lambda& lambda);

// The fraction the other swap partner experiences at this agent's node after
// the swap: (y + 1 - x - adjacent) / y.
Fraction predicted_swap_fraction(Fraction f, bool adjacent);

// Degree of integration: the number of non-segregated agents.
std::size_t doi(const Graph& g, const Profile& p);
// Number of monochromatic edges.
std::size_t potential(const Graph& g, const Profile& p);
// Number of segregated agents, split by color.
struct SegregationCount {
  std::size_t blue = 0;
  std::size_t red = 0;
};
SegregationCount segregation(const Graph& g, const Profile& p);

Rational sum_welfare(const GameSpec& game, const Profile& p);

}  // namespace schelling

template <>
struct std::hash<schelling::Profile> {
  std::size_t operator()(const schelling::Profile& p) const noexcept { return p.blue().hash(); }
};
