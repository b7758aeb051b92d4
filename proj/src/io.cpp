#include "schelling/io.hpp"

#include <fstream>
#include <sstream>

#include "schelling/errors.hpp"

namespace schelling {

namespace {

std::string rat(const Rational& r) { return to_string(r); }

template <class T>
Json optional_json(const std::optional<T>& v) {
  return v ? Json(*v) : Json(nullptr);
}

}  // namespace

Json to_json(const Graph& g) {
  Json edges = Json::array();
  for (auto [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.n()}, {"edges", std::move(edges)}};
}

Graph graph_from_json(const Json& j) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw InvalidInput("each edge must be a [u, v] pair");
      edges.emplace_back(e[0].get<Node>(), e[1].get<Node>());
    }
    return Graph(n, edges);
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed graph JSON: ") + e.what());
  }
}

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::vector<Edge> edges;
  std::size_t n = 0, line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u = 0, v = 0;
    if (!(ls >> u)) continue;
    std::string rest;
    if (!(ls >> v) || (ls >> rest) || u < 0 || v < 0)
      throw InvalidInput("edge list line " + std::to_string(line_no) + " is not a 'u v' pair");
    edges.emplace_back(static_cast<Node>(u), static_cast<Node>(v));
    n = std::max<std::size_t>(n, static_cast<std::size_t>(std::max(u, v)) + 1);
  }
  for (auto& [u, v] : edges)
    if (u > v) std::swap(u, v);
  return Graph(n, edges);
}

Graph parse_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::exception& e) {
      throw InvalidInput(std::string("malformed graph JSON: ") + e.what());
    }
    return graph_from_json(j);
  }
  return parse_edge_list(text);
}

Json to_json(const Profile& p) { return {{"blue", p.blue_nodes()}}; }

Profile profile_from_json(const Json& j, std::size_t n) {
  try {
    return Profile::from_blue(n, j.at("blue").get<std::vector<Node>>());
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed profile JSON: ") + e.what());
  }
}

Json to_json(SwapMove mv) { return Json::array({mv.u, mv.v}); }

Json to_json(const BoundCheck& c) {
  return {{"name", c.name},
          {"relation", c.relation},
          {"measured", rat(c.measured)},
          {"bound", rat(c.bound)},
          {"satisfied", c.satisfied}};
}

Json to_json(const AnalysisReport& r) {
  Json bounds = Json::array();
  for (const auto& c : r.bounds) bounds.push_back(to_json(c));
  const auto profile_or_null = [](const std::optional<Profile>& p) { return p ? to_json(*p) : Json(nullptr); };
  const auto rat_or_null = [](const std::optional<Rational>& q) { return q ? Json(rat(*q)) : Json(nullptr); };
  return {{"n", r.n},
          {"m", r.m},
          {"b", r.b},
          {"lambda", rat(r.lambda)},
          {"profile_count", r.profile_count},
          {"se_exists", r.se_exists},
          {"se_count", r.se_count},
          {"min_se_doi", optional_json(r.min_se_doi)},
          {"max_se_doi", optional_json(r.max_se_doi)},
          {"min_se_witness", profile_or_null(r.min_se_witness)},
          {"max_se_witness", profile_or_null(r.max_se_witness)},
          {"opt_doi", r.opt_doi},
          {"opt_witness", to_json(r.opt_witness)},
          {"poa", rat_or_null(r.poa)},
          {"pos", rat_or_null(r.pos)},
          {"mixed_segregation_se", r.mixed_segregation_se},
          {"mixed_segregation_witness", profile_or_null(r.mixed_segregation_witness)},
          {"bound_checks", std::move(bounds)}};
}

AnalysisReport report_from_json(const Json& j) {
  try {
    AnalysisReport r;
    r.n = j.at("n").get<std::size_t>();
    r.m = j.at("m").get<std::size_t>();
    r.b = j.at("b").get<std::size_t>();
    r.lambda = parse_rational(j.at("lambda").get<std::string>());
    r.profile_count = j.at("profile_count").get<std::uint64_t>();
    r.se_exists = j.at("se_exists").get<bool>();
    r.se_count = j.at("se_count").get<std::uint64_t>();
    const auto opt_size = [&](const char* key) -> std::optional<std::size_t> {
      return j.at(key).is_null() ? std::nullopt : std::optional(j.at(key).get<std::size_t>());
    };
    const auto opt_profile = [&](const char* key) -> std::optional<Profile> {
      return j.at(key).is_null() ? std::nullopt : std::optional(profile_from_json(j.at(key), r.n));
    };
    const auto opt_rat = [&](const char* key) -> std::optional<Rational> {
      return j.at(key).is_null() ? std::nullopt : std::optional(parse_rational(j.at(key).get<std::string>()));
    };
    r.min_se_doi = opt_size("min_se_doi");
    r.max_se_doi = opt_size("max_se_doi");
    r.min_se_witness = opt_profile("min_se_witness");
    r.max_se_witness = opt_profile("max_se_witness");
    r.opt_doi = j.at("opt_doi").get<std::size_t>();
    r.opt_witness = profile_from_json(j.at("opt_witness"), r.n);
    r.poa = opt_rat("poa");
    r.pos = opt_rat("pos");
    r.mixed_segregation_se = j.at("mixed_segregation_se").get<std::uint64_t>();
    r.mixed_segregation_witness = opt_profile("mixed_segregation_witness");
    for (const auto& c : j.at("bound_checks"))
      r.bounds.push_back({c.at("name").get<std::string>(), c.at("relation").get<std::string>(),
                          parse_rational(c.at("measured").get<std::string>()),
                          parse_rational(c.at("bound").get<std::string>()), c.at("satisfied").get<bool>()});
    return r;
  } catch (const Json::exception& e) {
    throw InvalidInput(std::string("malformed report JSON: ") + e.what());
  }
}

namespace {

Json step_json(const TraceStep& s) {
  return {{"step", s.step},
          {"move", to_json(s.move)},
          {"phi_before", s.phi_before},
          {"phi_after", s.phi_after},
          {"doi_after", s.doi_after}};
}

}  // namespace

Json to_json(const DynamicsOutcome& o) {
  Json trace = Json::array();
  for (const auto& s : o.trace) trace.push_back(step_json(s));
  return {{"kind", std::string(to_string(o.kind))},
          {"final", to_json(o.final_profile)},
          {"steps", o.steps},
          {"cycle_start", optional_json(o.cycle_start)},
          {"trace", std::move(trace)}};
}

Json to_json(const Certificate& c) {
  return {{"is_se", c.is_se},
          {"doi", c.doi},
          {"phi", c.phi},
          {"assertions_passed", c.assertions_passed},
          {"counterexample", c.counterexample ? to_json(*c.counterexample) : Json(nullptr)}};
}

Json to_json(const NamedInstance& inst) {
  Json profiles = Json::object();
  for (const auto& [tag, p] : inst.profiles) profiles[tag] = to_json(p);
  Json expected = Json::object();
  for (const auto& [key, value] : inst.expected)
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Rational>)
            expected[key] = rat(v);
          else
            expected[key] = v;
        },
        value);
  return {{"name", inst.name},
          {"params", inst.params},
          {"graph", to_json(inst.game.graph())},
          {"b", inst.game.blue_count()},
          {"lambda", inst.game.lambda().to_string()},
          {"profiles", std::move(profiles)},
          {"expected", std::move(expected)}};
}

Json to_json(const HierarchicalResult& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back({{"blue_part", l.blue_part.to_vector()}, {"dominated", l.dominated}});
  return {{"source", r.source},
          {"profile", to_json(r.profile)},
          {"constructed", r.constructed ? to_json(*r.constructed) : Json(nullptr)},
          {"k", optional_json(r.k)},
          {"levels", std::move(levels)},
          {"chosen_level", optional_json(r.chosen_level)},
          {"failed_guards", r.failed_guards}};
}

Json to_json(const RepairResult& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back({{"proposed", to_json(s.proposed)},
                     {"applied", to_json(s.applied)},
                     {"phi_after", s.phi_after},
                     {"doi_after", s.doi_after}});
  return {{"profile", to_json(r.profile)}, {"steps", std::move(steps)}};
}

std::string trace_jsonl(const std::vector<TraceStep>& trace) {
  std::string out;
  for (const auto& s : trace) out += step_json(s).dump() + "\n";
  return out;
}

std::string trace_csv(const std::vector<TraceStep>& trace, std::size_t phi_start, std::size_t doi_start) {
  std::ostringstream out;
  out << "step,u,v,phi_before,phi_after,doi_after\n";
  out << "0,,," << phi_start << "," << phi_start << "," << doi_start << "\n";
  for (const auto& s : trace)
    out << s.step << "," << s.move.u << "," << s.move.v << "," << s.phi_before << "," << s.phi_after << ","
        << s.doi_after << "\n";
  return out.str();
}

std::string to_dot(const Graph& g, const Profile* p) {
  if (p && p->n() != g.n()) throw InvalidInput("profile size does not match the graph");
  std::ostringstream out;
  out << "graph G {\n  node [shape=circle];\n";
  for (Node v = 0; v < g.n(); ++v) {
    out << "  " << v;
    if (p) {
      const bool seg = same_color_fraction(g, *p, v).segregated();
      out << " [style=filled, fillcolor=" << (p->is_blue(v) ? "blue" : "red")
          << (seg ? ", penwidth=3, color=black" : "") << "]";
    }
    out << ";\n";
  }
  for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
  out << "}\n";
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << content;
  if (!out) throw InvalidInput("failed writing '" + path + "'");
}

}  // namespace schelling
