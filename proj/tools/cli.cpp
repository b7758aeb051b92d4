#include "cli.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "schelling/analysis.hpp"
#include "schelling/combinatorics.hpp"
#include "schelling/construct.hpp"
#include "schelling/errors.hpp"
#include "schelling/gallery.hpp"
#include "schelling/io.hpp"

namespace schelling::cli {

namespace {

struct Options {
  // shared
  unsigned threads = 0;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> budget;
  std::optional<std::uint64_t> alpha_budget;
  std::string out;

  // game source
  std::string graph_file;
  std::string gen;
  std::string instance;
  std::vector<std::string> params;
  std::optional<std::size_t> b;
  std::string lambda;
  std::string display_peak = "tent";

  // profile source
  std::string profile_file;
  std::string profile_tag;
  std::string colors;
  bool random_start = false;

  // dynamics
  std::string policy = "first-lex";
  std::size_t max_steps = 10000;
  std::string trace;
  std::string csv;

  // construct
  std::string algorithm;
  std::string mode = "global";
  std::size_t k = 2;
  std::string node_set;

  // generate
  std::string name;

  // hunt
  std::size_t trials = 100;
  std::size_t n_min = 4;
  std::size_t n_max = 10;
};

std::map<std::string, std::string> parse_params(const std::vector<std::string>& raw) {
  std::map<std::string, std::string> out;
  for (const auto& kv : raw) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw InvalidInput("--param expects key=value, got '" + kv + "'");
    out[kv.substr(0, eq)] = kv.substr(eq + 1);
  }
  return out;
}

std::size_t param_size(const std::map<std::string, std::string>& p, const std::string& key, std::size_t fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(it->second, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != it->second.size()) throw InvalidInput("parameter '" + key + "' must be an integer");
  return v;
}

std::vector<Node> parse_node_list(const std::string& text) {
  std::vector<Node> out;
  std::stringstream ss(text);
  for (std::string part; std::getline(ss, part, ',');) {
    if (part.empty()) continue;
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(part, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == 0 || pos != part.size()) throw InvalidInput("node list entry '" + part + "' is not an id");
    out.push_back(static_cast<Node>(v));
  }
  return out;
}

Graph base_graph(const std::string& name) {
  if (name == "k4") return complete_graph(4);
  if (name == "q3") return hypercube_graph(3);
  if (name == "petersen") return petersen_graph();
  if (name == "k33") return complete_bipartite_graph(3, 3);
  throw InvalidInput("unknown base graph '" + name + "' (k4, q3, petersen, k33)");
}

Lambda lambda_or(const Options& o, const char* fallback) {
  return Lambda::parse(o.lambda.empty() ? std::string_view(fallback) : std::string_view(o.lambda));
}

NamedInstance build_instance(const std::string& name, const Options& o) {
  const auto p = parse_params(o.params);
  const PeakShape shape = parse_peak_shape(o.display_peak);
  const auto finish = [&](NamedInstance inst) {
    if (shape != PeakShape::Tent) inst.game = inst.game.with_display_peak(shape);
    return inst;
  };
  const auto reduction_base = [&]() -> Graph {
    if (!o.graph_file.empty()) return parse_graph(read_file(o.graph_file));
    return base_graph(p.count("base") ? p.at("base") : "k4");
  };
  if (name == "no-se-ring") return finish(no_se_ring(lambda_or(o, "3/4")));
  if (name == "poa-ring") return finish(poa_ring_instance(param_size(p, "b", 2), lambda_or(o, "1/2")));
  if (name == "poa-regular")
    return finish(poa_regular_instance(param_size(p, "delta", 2), param_size(p, "lower", 12), lambda_or(o, "1/2")));
  if (name == "pos-general")
    return finish(pos_general_instance(param_size(p, "q", 2), param_size(p, "b", 2), lambda_or(o, "1/2")));
  if (name == "pos-bipartite") return finish(pos_bipartite_instance(param_size(p, "b", 2)));
  if (name == "dominating-set")
    return finish(dominating_set_reduction(reduction_base(), param_size(p, "k", 1), lambda_or(o, "1/2")));
  if (name == "vertex-cover") {
    std::optional<std::vector<Node>> cover;
    if (p.count("cover")) cover = parse_node_list(p.at("cover"));
    return finish(vertex_cover_reduction(reduction_base(), lambda_or(o, "1/2"), cover));
  }
  throw InvalidInput("unknown instance '" + name +
                     "' (no-se-ring, poa-ring, poa-regular, pos-general, pos-bipartite, dominating-set, vertex-cover)");
}

struct Loaded {
  std::optional<GameSpec> game;
  std::optional<NamedInstance> instance;
};

Loaded load_game(const Options& o) {
  const int sources = !o.graph_file.empty() + !o.gen.empty() + !o.instance.empty();
  if (sources != 1) throw InvalidInput("give exactly one of --graph, --gen or --instance");
  Loaded l;
  if (!o.instance.empty()) {
    l.instance = build_instance(o.instance, o);
    l.game = l.instance->game;
    return l;
  }
  Graph g = !o.graph_file.empty() ? parse_graph(read_file(o.graph_file)) : stock_graph(o.gen, parse_params(o.params), o.seed);
  if (!o.b) throw InvalidInput("--b is required with --graph or --gen");
  if (o.lambda.empty()) throw InvalidInput("--lambda is required with --graph or --gen");
  l.game.emplace(std::move(g), *o.b, Lambda::parse(o.lambda), parse_peak_shape(o.display_peak));
  return l;
}

std::optional<Profile> load_profile(const Options& o, const Loaded& l) {
  const GameSpec& game = *l.game;
  const int sources = !o.profile_file.empty() + !o.profile_tag.empty() + !o.colors.empty() + o.random_start;
  if (sources > 1) throw InvalidInput("give at most one of --profile, --profile-tag, --colors, --random-start");
  std::optional<Profile> p;
  if (!o.profile_file.empty()) {
    Json j;
    try {
      j = Json::parse(read_file(o.profile_file));
    } catch (const Json::exception& e) {
      throw InvalidInput(std::string("malformed profile file: ") + e.what());
    }
    p = profile_from_json(j, game.n());
  } else if (!o.profile_tag.empty()) {
    if (!l.instance) throw InvalidInput("--profile-tag needs --instance");
    const auto it = l.instance->profiles.find(o.profile_tag);
    if (it == l.instance->profiles.end()) throw InvalidInput("instance has no profile tagged '" + o.profile_tag + "'");
    p = it->second;
  } else if (!o.colors.empty()) {
    p = Profile::parse(o.colors);
  } else if (o.random_start) {
    std::vector<Node> order(game.n());
    std::iota(order.begin(), order.end(), Node{0});
    Rng rng(o.seed);
    rng.shuffle(order);
    order.resize(game.blue_count());
    p = Profile(NodeSet(game.n(), order));
  }
  if (p) game.validate(*p);
  return p;
}

EnumerationOptions enumeration(const Options& o) {
  EnumerationOptions e = EnumerationOptions::from_env(o.threads);
  if (o.budget) e.budget = *o.budget;
  return e;
}

std::uint64_t alpha_budget(const Options& o) {
  return o.alpha_budget ? *o.alpha_budget : env_budget("SCHELLING_ALPHA_BUDGET", kDefaultAlphaBudget);
}

Json config_json(const std::string& command, const Options& o) {
  Json c = {{"command", command},
            {"threads", o.threads},
            {"seed", o.seed},
            {"budget", o.budget ? Json(*o.budget) : Json(nullptr)},
            {"alpha_budget", o.alpha_budget ? Json(*o.alpha_budget) : Json(nullptr)},
            {"graph", o.graph_file},
            {"gen", o.gen},
            {"instance", o.instance},
            {"params", o.params},
            {"b", o.b ? Json(*o.b) : Json(nullptr)},
            {"lambda", o.lambda},
            {"display_peak", o.display_peak},
            {"profile", o.profile_file},
            {"profile_tag", o.profile_tag},
            {"colors", o.colors},
            {"random_start", o.random_start}};
  if (command == "dynamics") {
    c["policy"] = o.policy;
    c["max_steps"] = o.max_steps;
  }
  if (command == "construct") {
    c["algorithm"] = o.algorithm;
    c["mode"] = o.mode;
    c["k"] = o.k;
    c["set"] = o.node_set;
  }
  if (command == "generate") c["name"] = o.name;
  if (command == "hunt") {
    c["trials"] = o.trials;
    c["n_min"] = o.n_min;
    c["n_max"] = o.n_max;
  }
  return c;
}

Json game_json(const GameSpec& game) {
  return {{"graph", to_json(game.graph())},
          {"b", game.blue_count()},
          {"lambda", game.lambda().to_string()},
          {"display_peak", std::string(to_string(game.display_peak()))}};
}

void emit(const Options& o, const std::string& command, Json result, std::ostream& out) {
  Json doc = {{"version", std::string(kVersion)}, {"config", config_json(command, o)}, {"result", std::move(result)}};
  const std::string text = doc.dump(2) + "\n";
  if (o.out.empty())
    out << text;
  else
    write_file(o.out, text);
}

int cmd_generate(const Options& o, std::ostream& out) {
  Options copy = o;
  Json result;
  static const std::vector<std::string> stock = {"ring", "path", "star", "clique", "complete-bipartite", "grid",
                                                 "hypercube", "circulant", "petersen", "random-regular",
                                                 "random-almost-regular", "random-tree", "random-connected"};
  if (std::find(stock.begin(), stock.end(), o.name) != stock.end()) {
    const Graph g = stock_graph(o.name, parse_params(o.params), o.seed);
    result = {{"name", o.name}, {"graph", to_json(g)}};
  } else {
    result = to_json(build_instance(o.name, o));
  }
  emit(copy, "generate", std::move(result), out);
  return kOk;
}

int cmd_dynamics(const Options& o, std::ostream& out) {
  const Loaded l = load_game(o);
  const auto start = load_profile(o, l);
  if (!start) throw InvalidInput("dynamics needs a start profile (--profile, --profile-tag, --colors, --random-start)");
  const auto outcome = run_dynamics(*l.game, *start, SwapPolicy::parse(o.policy, o.seed), o.max_steps);
  const Graph& g = l.game->graph();
  Json result = {{"game", game_json(*l.game)},
                 {"start", to_json(*start)},
                 {"start_phi", potential(g, *start)},
                 {"start_doi", doi(g, *start)},
                 {"outcome", to_json(outcome)}};
  if (outcome.kind == OutcomeKind::Converged) result["final_certificate"] = to_json(certify(*l.game, outcome.final_profile));
  if (!o.trace.empty()) write_file(o.trace, trace_jsonl(outcome.trace));
  if (!o.csv.empty()) write_file(o.csv, trace_csv(outcome.trace, potential(g, *start), doi(g, *start)));
  emit(o, "dynamics", std::move(result), out);
  switch (outcome.kind) {
    case OutcomeKind::Converged: return kOk;
    case OutcomeKind::CycleDetected: return kCycle;
    case OutcomeKind::BudgetExhausted: return kBudget;
  }
  return kOk;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Loaded l = load_game(o);
  const AnalysisReport report = analyze(*l.game, enumeration(o), alpha_budget(o));
  Json result = {{"game", game_json(*l.game)}, {"report", to_json(report)}};
  emit(o, "analyze", std::move(result), out);
  return report.bounds_hold() ? kOk : kBoundViolation;
}

Profile optimum_or_given(const Options& o, const Loaded& l) {
  if (auto p = load_profile(o, l)) return *p;
  return optimal_doi(*l.game, enumeration(o)).witness;
}

int cmd_construct(const Options& o, std::ostream& out) {
  const Loaded l = load_game(o);
  const GameSpec& game = *l.game;
  const Graph& g = game.graph();
  Json result = {{"game", game_json(game)}, {"algorithm", o.algorithm}};

  const auto node_set = [&]() {
    if (o.node_set.empty()) return NodeSet::full(g.n());
    return NodeSet(g.n(), parse_node_list(o.node_set));
  };
  const auto partition_json = [](const KPartition& kp) {
    Json parts = Json::array();
    for (const auto& part : kp.parts) parts.push_back(part.to_vector());
    return Json{{"k", kp.k}, {"parts", parts}, {"internal_edges", kp.internal_edges()}};
  };

  if (o.algorithm == "greedy-cut" || o.algorithm == "balanced-cut") {
    if (o.algorithm == "greedy-cut") {
      result["partition"] = partition_json(greedy_k_max_cut(g, node_set(), o.k));
    } else {
      const auto cut = balanced_k_max_cut(g, node_set(), o.k);
      result["partition"] = partition_json(cut.partition);
      result["distinguished"] = cut.distinguished;
      result["rho_swaps"] = cut.rho_swaps;
    }
    result["certificate"] = {{"assertions_passed", true}};
    emit(o, "construct", std::move(result), out);
    return kOk;
  }

  Profile built;
  if (o.algorithm == "independent-set") {
    NodeSet is(g.n());
    if (!o.node_set.empty()) {
      is = node_set();
    } else if (const auto parts = bipartition(g);
               parts && (parts->smaller.size() == game.blue_count() || parts->smaller.size() == game.red_count())) {
      is = NodeSet(g.n(), parts->smaller);
    } else {
      const auto mis = independence_number(g, alpha_budget(o));
      if (mis.size < game.blue_count())
        throw PreconditionViolation("alpha-at-least-b", "alpha(G) = " + std::to_string(mis.size) + " < b");
      auto nodes = mis.witness.to_vector();
      nodes.resize(game.blue_count());
      is = NodeSet(g.n(), nodes);
    }
    built = independent_set_placement(game, is);
  } else if (o.algorithm == "bipartite") {
    built = bipartite_se_from_optimum(game, optimum_or_given(o, l));
  } else if (o.algorithm == "phi-min") {
    PhiMinimization how;
    if (o.mode == "global")
      how.mode = PhiMinimization::Mode::GlobalBruteForce;
    else if (o.mode == "local")
      how.mode = PhiMinimization::Mode::LocalSearch;
    else
      throw InvalidInput("--mode must be global or local");
    how.start = load_profile(o, l);
    how.seed = o.seed;
    how.enumeration = enumeration(o);
    built = phi_minimum_profile(game, how);
  } else if (o.algorithm == "hierarchical") {
    const auto res = hierarchical_pos_construction(game, optimum_or_given(o, l), alpha_budget(o));
    result["details"] = to_json(res);
    built = res.profile;
  } else if (o.algorithm == "repair") {
    const auto res = se_repair_bounded_degree(game, optimum_or_given(o, l));
    result["details"] = to_json(res);
    built = res.profile;
  } else {
    throw InvalidInput("unknown algorithm '" + o.algorithm +
                       "' (independent-set, bipartite, phi-min, hierarchical, repair, greedy-cut, balanced-cut)");
  }
  const Certificate cert = certify(game, built);
  result["profile"] = to_json(built);
  result["certificate"] = to_json(cert);
  emit(o, "construct", std::move(result), out);
  return cert.is_se ? kOk : kBoundViolation;
}

int cmd_export_dot(const Options& o, std::ostream& out) {
  const Loaded l = load_game(o);
  const auto p = load_profile(o, l);
  const std::string dot = to_dot(l.game->graph(), p ? &*p : nullptr);
  if (o.out.empty())
    out << dot;
  else
    write_file(o.out, dot);
  return kOk;
}

// Random connected graphs at Lambda <= 1/2 searched for games without any
// swap equilibrium.
int cmd_hunt(const Options& o, std::ostream& out) {
  if (o.n_min < 2 || o.n_min > o.n_max) throw InvalidInput("need 2 <= --n-min <= --n-max");
  const Lambda lambda = lambda_or(o, "1/2");
  const EnumerationOptions enumer = enumeration(o);
  const PeakShape shape = parse_peak_shape(o.display_peak);
  Rng rng(o.seed);
  Json found = Json::array();
  std::size_t checked = 0, skipped = 0, almost_regular = 0;
  for (std::size_t t = 0; t < o.trials; ++t) {
    const std::size_t n = o.n_min + rng.below(o.n_max - o.n_min + 1);
    const std::size_t extra = rng.below(n + 1);
    const std::size_t b = o.b ? *o.b : 1 + rng.below(n / 2);
    const std::uint64_t graph_seed = rng.next();
    Graph g = random_connected_graph(n, extra, graph_seed);
    if (b < 1 || 2 * b > n || binomial(n, b) > enumer.budget) {
      ++skipped;
      continue;
    }
    if (degree_profile(g).almost_regular) ++almost_regular;
    const GameSpec game(std::move(g), b, lambda, shape);
    const AnalysisReport r = enumerate_equilibria(game, enumer);
    ++checked;
    if (!r.se_exists) found.push_back({{"trial", t}, {"game", game_json(game)}});
  }
  Json result = {{"trials", o.trials},
                 {"checked", checked},
                 {"skipped", skipped},
                 {"almost_regular", almost_regular},
                 {"games_without_se", std::move(found)}};
  emit(o, "hunt", std::move(result), out);
  return kOk;
}

void add_shared(CLI::App* app, Options& o) {
  app->add_option("--threads", o.threads, "Worker threads for enumeration (0 = all cores)")->capture_default_str();
  app->add_option("--seed", o.seed, "Seed for random generators, starts and policies")->capture_default_str();
  app->add_option("--budget", o.budget, "Enumeration cap in profiles (default 10^7 or SCHELLING_ENUM_BUDGET)");
  app->add_option("--alpha-budget", o.alpha_budget,
                  "Independence-number search cap (default 5*10^7 or SCHELLING_ALPHA_BUDGET)");
  app->add_option("--out", o.out, "Write the primary output here instead of stdout");
}

void add_game(CLI::App* app, Options& o) {
  app->add_option("--graph", o.graph_file, "Graph file: JSON {\"n\", \"edges\"} or 'u v' edge list");
  app->add_option("--gen", o.gen, "Stock graph kind (ring, path, star, clique, grid, random-regular, ...)");
  app->add_option("--instance", o.instance, "Gallery instance (no-se-ring, poa-ring, poa-regular, ...)");
  app->add_option("--param", o.params, "Generator parameter key=value (repeatable)");
  app->add_option("--b", o.b, "Number of blue (minority) agents");
  app->add_option("--lambda", o.lambda, "Peak position as p/q");
  app->add_option("--display-peak", o.display_peak, "Display utility: tent or squared-tent")->capture_default_str();
}

void add_profile(CLI::App* app, Options& o) {
  app->add_option("--profile", o.profile_file, "Profile file {\"blue\": [ids]}");
  app->add_option("--profile-tag", o.profile_tag, "Tagged profile of the instance (optimum, bad_se, ...)");
  app->add_option("--colors", o.colors, "Profile as a B/R string, one character per node");
  app->add_flag("--random-start", o.random_start, "Seeded uniformly random profile");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Swap Schelling games with single-peaked utilities"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  auto* generate = app.add_subcommand("generate", "Write a gallery instance or stock graph as JSON");
  generate->add_option("name", o.name, "Instance or stock graph name")->required();
  add_shared(generate, o);
  generate->add_option("--param", o.params, "Generator parameter key=value (repeatable)");
  generate->add_option("--lambda", o.lambda, "Peak position as p/q");
  generate->add_option("--graph", o.graph_file, "Base cubic graph file for the reductions");
  generate->add_option("--display-peak", o.display_peak, "Display utility: tent or squared-tent")->capture_default_str();

  auto* dynamics = app.add_subcommand("dynamics", "Run improving swap dynamics (exit 2 on a cycle, 3 on budget)");
  add_shared(dynamics, o);
  add_game(dynamics, o);
  add_profile(dynamics, o);
  dynamics->add_option("--policy", o.policy, "first-lex, best-potential-drop or uniform-random")->capture_default_str();
  dynamics->add_option("--max-steps", o.max_steps, "Swap budget")->capture_default_str();
  dynamics->add_option("--trace", o.trace, "Write the JSONL trace here");
  dynamics->add_option("--csv", o.csv, "Write per-step DoI and potential as CSV here");

  auto* analyze_cmd = app.add_subcommand("analyze", "Enumerate all profiles and check the bounds (exit 4 on violation)");
  add_shared(analyze_cmd, o);
  add_game(analyze_cmd, o);

  auto* construct = app.add_subcommand("construct", "Run an equilibrium construction and certify the result");
  construct
      ->add_option("algorithm", o.algorithm,
                   "independent-set, bipartite, phi-min, hierarchical, repair, greedy-cut, balanced-cut")
      ->required();
  add_shared(construct, o);
  add_game(construct, o);
  add_profile(construct, o);
  construct->add_option("--mode", o.mode, "phi-min mode: global or local")->capture_default_str();
  construct->add_option("--k", o.k, "Number of parts for the cut algorithms")->capture_default_str();
  construct->add_option("--set", o.node_set, "Comma-separated node ids (independent set or cut domain)");

  auto* dot = app.add_subcommand("export-dot", "Write the graph in DOT, colored by the profile if given");
  add_shared(dot, o);
  add_game(dot, o);
  add_profile(dot, o);

  auto* hunt = app.add_subcommand("hunt", "Search random connected games for ones without any equilibrium");
  add_shared(hunt, o);
  hunt->add_option("--trials", o.trials, "Number of random games")->capture_default_str();
  hunt->add_option("--n-min", o.n_min, "Smallest node count")->capture_default_str();
  hunt->add_option("--n-max", o.n_max, "Largest node count")->capture_default_str();
  hunt->add_option("--b", o.b, "Fixed blue count (random in 1..n/2 otherwise)");
  hunt->add_option("--lambda", o.lambda, "Peak position as p/q (default 1/2)");
  hunt->add_option("--display-peak", o.display_peak, "Display utility: tent or squared-tent")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(o, out);
    if (dynamics->parsed()) return cmd_dynamics(o, out);
    if (analyze_cmd->parsed()) return cmd_analyze(o, out);
    if (construct->parsed()) return cmd_construct(o, out);
    if (dot->parsed()) return cmd_export_dot(o, out);
    if (hunt->parsed()) return cmd_hunt(o, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const AssertionFailure& e) {
    err << "assertion failed: " << e.what() << "\n";
    return kBoundViolation;
  } catch (const PreconditionViolation& e) {
    err << "precondition failed: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace schelling::cli
