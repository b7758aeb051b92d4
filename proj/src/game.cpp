#include "schelling/game.hpp"

#include <algorithm>
#include <charconv>
#include <map>

#include "schelling/errors.hpp"

namespace schelling {

namespace {

std::int64_t parse_int(std::string_view text, std::string_view whole) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw InvalidInput("malformed rational '" + std::string(whole) + "'");
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  const std::int64_t num = parse_int(text.substr(0, slash), text);
  const std::int64_t den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw InvalidInput("zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Lambda::Lambda(Rational value) : value_(value) {
  if (value_ <= 0 || value_ >= 1)
    throw InvalidInput("peak " + schelling::to_string(value_) + " must lie strictly between 0 and 1");
}

std::string_view to_string(PeakShape shape) {
  return shape == PeakShape::Tent ? "tent" : "squared-tent";
}

PeakShape parse_peak_shape(std::string_view text) {
  if (text == "tent") return PeakShape::Tent;
  if (text == "squared-tent") return PeakShape::SquaredTent;
  throw InvalidInput("unknown peak shape '" + std::string(text) + "' (tent, squared-tent)");
}

std::string_view to_string(PeakSide side) {
  switch (side) {
    case PeakSide::Below: return "below";
    case PeakSide::At: return "at";
    case PeakSide::Above: return "above";
  }
  return "?";
}

Profile Profile::from_blue(std::size_t n, std::span<const Node> blue_nodes) {
  NodeSet blue(n);
  for (Node v : blue_nodes) {
    if (v >= n) throw InvalidInput("blue node " + std::to_string(v) + " out of range");
    if (blue.contains(v)) throw InvalidInput("blue node " + std::to_string(v) + " listed twice");
    blue.insert(v);
  }
  return Profile(std::move(blue));
}

Profile Profile::parse(std::string_view colors) {
  NodeSet blue(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i) {
    if (colors[i] == 'B')
      blue.insert(static_cast<Node>(i));
    else if (colors[i] != 'R')
      throw InvalidInput("profile string may only contain B and R");
  }
  return Profile(std::move(blue));
}

std::string Profile::to_string() const {
  std::string out(n(), 'R');
  blue_.for_each([&](Node v) { out[v] = 'B'; });
  return out;
}

GameSpec::GameSpec(Graph graph, std::size_t blue_count, Lambda lambda, PeakShape display)
    : graph_(std::make_shared<const Graph>(std::move(graph))),
      blue_count_(blue_count),
      lambda_(lambda),
      display_(display) {
  if (graph_->n() < 2) throw InvalidInput("game graph needs at least two nodes");
  if (!graph_->is_connected()) throw InvalidInput("game graph must be connected");
  if (blue_count_ < 1 || 2 * blue_count_ > graph_->n())
    throw InvalidInput("blue count " + std::to_string(blue_count_) + " must satisfy 1 <= b <= n/2 = " +
                       std::to_string(graph_->n() / 2));

  const std::size_t max_size = degree_profile(*graph_).max_degree + 1;
  std::vector<Rational> scores;
  for (std::int64_t y = 1; y <= static_cast<std::int64_t>(max_size); ++y)
    for (std::int64_t x = 0; x <= y; ++x) scores.push_back(peak_score({x, y}, lambda_));
  std::sort(scores.begin(), scores.end());
  scores.erase(std::unique(scores.begin(), scores.end()), scores.end());

  auto table = std::make_shared<std::vector<std::vector<int>>>(max_size + 1);
  for (std::int64_t y = 1; y <= static_cast<std::int64_t>(max_size); ++y) {
    auto& row = (*table)[static_cast<std::size_t>(y)];
    row.resize(static_cast<std::size_t>(y) + 1);
    for (std::int64_t x = 0; x <= y; ++x) {
      const Rational s = peak_score({x, y}, lambda_);
      row[static_cast<std::size_t>(x)] =
          static_cast<int>(std::lower_bound(scores.begin(), scores.end(), s) - scores.begin());
    }
  }
  score_table_ = std::move(table);
}

GameSpec GameSpec::with_display_peak(PeakShape shape) const {
  GameSpec copy = *this;
  copy.display_ = shape;
  return copy;
}

GameSpec GameSpec::with_lambda(Lambda lambda) const {
  return GameSpec(*graph_, blue_count_, lambda, display_);
}

void GameSpec::validate(const Profile& p) const {
  if (p.n() != n())
    throw InvalidInput("profile covers " + std::to_string(p.n()) + " nodes, graph has " + std::to_string(n()));
  if (p.blue_count() != blue_count_)
    throw InvalidInput("profile has " + std::to_string(p.blue_count()) + " blue nodes, game requires " +
                       std::to_string(blue_count_));
}

Fraction same_color_fraction(const Graph& g, const Profile& p, Node v) {
  const NodeSet& closed = g.closed_neighborhood(v);
  const auto size = static_cast<std::int64_t>(closed.size());
  const auto blue = static_cast<std::int64_t>(closed.intersection_size(p.blue()));
  return {p.is_blue(v) ? blue : size - blue, size};
}

Rational peak_score(Fraction f, const Lambda& lambda) {
  const Rational x = f.value();
  if (x <= lambda.value()) return x;
  return lambda.value() * (Rational(1) - x) / (Rational(1) - lambda.value());
}

Rational utility_value(Fraction f, const Lambda& lambda, PeakShape shape) {
  const Rational tent = peak_score(f, lambda) / lambda.value();
  return shape == PeakShape::Tent ? tent : tent * tent;
}

PeakClass classify(Fraction f, const Lambda& lambda) {
  const Rational x = f.value();
  const PeakSide side = x < lambda.value() ? PeakSide::Below : x == lambda.value() ? PeakSide::At : PeakSide::Above;
  return {side, f.segregated()};
}

Fraction predicted_swap_fraction(Fraction f, bool adjacent) {
  return {f.size + 1 - f.same - (adjacent ? 1 : 0), f.size};
}

std::size_t doi(const Graph& g, const Profile& p) {
  const auto s = segregation(g, p);
  return g.n() - s.blue - s.red;
}

SegregationCount segregation(const Graph& g, const Profile& p) {
  SegregationCount s;
  for (Node v = 0; v < g.n(); ++v) {
    const NodeSet& closed = g.closed_neighborhood(v);
    const std::size_t blue = closed.intersection_size(p.blue());
    if (p.is_blue(v) && blue == closed.size()) ++s.blue;
    if (!p.is_blue(v) && blue == 0) ++s.red;
  }
  return s;
}

std::size_t potential(const Graph& g, const Profile& p) {
  std::size_t mono = 0;
  for (Node u = 0; u < g.n(); ++u)
    for (Node v : g.neighbors(u))
      if (u < v && p.is_blue(u) == p.is_blue(v)) ++mono;
  return mono;
}

Rational sum_welfare(const GameSpec& game, const Profile& p) {
  Rational total(0);
  for (Node v = 0; v < game.n(); ++v) total += utility_value(same_color_fraction(game, p, v), game);
  return total;
}

}  // namespace schelling
