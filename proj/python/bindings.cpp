#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schelling/analysis.hpp"
#include "schelling/construct.hpp"
#include "schelling/errors.hpp"
#include "schelling/gallery.hpp"
#include "schelling/io.hpp"

namespace py = pybind11;
using namespace schelling;

namespace {

// Reports cross the boundary as plain dicts through the JSON encoders, so
// Python sees exactly what the CLI writes.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Lambda lambda_arg(const std::string& text) { return Lambda::parse(text); }

EnumerationOptions enumeration(std::uint64_t budget, unsigned threads) { return {budget, threads}; }

GameSpec make_game(const Graph& g, std::size_t b, const std::string& lambda, const std::string& display_peak) {
  return GameSpec(g, b, lambda_arg(lambda), parse_peak_shape(display_peak));
}

}  // namespace

PYBIND11_MODULE(_schelling, m) {
  m.doc() = "Swap Schelling games with single-peaked utilities";
  m.attr("__version__") = std::string(kVersion);

  // Later registrations are tried first, so subclasses go after Error. The
  // precondition message starts with the guard name.
  auto& error = py::register_exception<Error>(m, "SchellingError");
  py::register_exception<InvalidInput>(m, "InvalidInput", error.ptr());
  py::register_exception<PreconditionViolation>(m, "PreconditionViolation", error.ptr());
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", error.ptr());
  py::register_exception<AssertionFailure>(m, "AssertionFailure", error.ptr());

  py::class_<Graph>(m, "Graph")
      .def(py::init([](std::size_t n, const std::vector<Edge>& edges) { return Graph(n, edges); }), py::arg("n"),
           py::arg("edges"))
      .def_property_readonly("n", &Graph::n)
      .def_property_readonly("m", &Graph::m)
      .def("degree", &Graph::degree)
      .def("neighbors", [](const Graph& g, Node v) {
        const auto s = g.neighbors(v);
        return std::vector<Node>(s.begin(), s.end());
      })
      .def("has_edge", &Graph::has_edge)
      .def("edges", &Graph::edges)
      .def("is_connected", &Graph::is_connected)
      .def("to_json", [](const Graph& g) { return to_py(to_json(g)); })
      .def_static("parse", [](const std::string& text) { return parse_graph(text); })
      .def("__repr__", [](const Graph& g) {
        return "<Graph n=" + std::to_string(g.n()) + " m=" + std::to_string(g.m()) + ">";
      });

  py::class_<Profile>(m, "Profile")
      .def(py::init([](const std::string& colors) { return Profile::parse(colors); }), py::arg("colors"))
      .def_static("from_blue", [](std::size_t n, const std::vector<Node>& blue) { return Profile::from_blue(n, blue); })
      .def_property_readonly("n", &Profile::n)
      .def_property_readonly("blue", &Profile::blue_nodes)
      .def("is_blue", &Profile::is_blue)
      .def("__str__", &Profile::to_string)
      .def("__repr__", [](const Profile& p) { return "<Profile " + p.to_string() + ">"; })
      .def("__eq__", [](const Profile& a, const Profile& b) { return a == b; })
      .def("__hash__", [](const Profile& p) { return std::hash<Profile>{}(p); });

  py::class_<GameSpec>(m, "Game")
      .def(py::init(&make_game), py::arg("graph"), py::arg("b"), py::arg("lam"), py::arg("display_peak") = "tent")
      .def_property_readonly("graph", &GameSpec::graph, py::return_value_policy::reference_internal)
      .def_property_readonly("n", &GameSpec::n)
      .def_property_readonly("b", &GameSpec::blue_count)
      .def_property_readonly("lam", [](const GameSpec& g) { return g.lambda().to_string(); })
      .def_property_readonly("display_peak", [](const GameSpec& g) { return std::string(to_string(g.display_peak())); })
      .def("with_display_peak",
           [](const GameSpec& g, const std::string& shape) { return g.with_display_peak(parse_peak_shape(shape)); })
      .def("fraction",
           [](const GameSpec& g, const Profile& p, Node v) {
             g.validate(p);
             const Fraction f = same_color_fraction(g, p, v);
             return py::make_tuple(f.same, f.size);
           })
      .def("utility",
           [](const GameSpec& g, const Profile& p, Node v) {
             g.validate(p);
             return to_string(utility_value(same_color_fraction(g, p, v), g));
           })
      .def("doi", [](const GameSpec& g, const Profile& p) { return doi(g.graph(), p); })
      .def("potential", [](const GameSpec& g, const Profile& p) { return potential(g.graph(), p); })
      .def("welfare", [](const GameSpec& g, const Profile& p) { return to_string(sum_welfare(g, p)); });

  m.def("ring", &ring_graph);
  m.def("path", &path_graph);
  m.def("star", &star_graph, py::arg("leaves"));
  m.def("complete", &complete_graph);
  m.def("complete_bipartite", &complete_bipartite_graph);
  m.def("grid", &grid_graph);
  m.def("hypercube", &hypercube_graph);
  m.def("circulant", &circulant_graph);
  m.def("petersen", &petersen_graph);
  m.def("random_regular", &random_regular_graph, py::arg("n"), py::arg("degree"), py::arg("seed"));
  m.def("random_almost_regular", &random_almost_regular_graph, py::arg("n"), py::arg("degree"), py::arg("seed"));
  m.def("random_connected", &random_connected_graph, py::arg("n"), py::arg("extra_edges"), py::arg("seed"));
  m.def("independence_number", [](const Graph& g, std::uint64_t budget) {
    const auto r = independence_number(g, budget);
    return py::make_tuple(r.size, r.witness.to_vector());
  }, py::arg("graph"), py::arg("budget") = kDefaultAlphaBudget);

  m.def("is_profitable_swap", [](const GameSpec& g, const Profile& p, Node u, Node v) {
    g.validate(p);
    return is_profitable_swap(g, p, u, v);
  });
  m.def("profitable_swaps", [](const GameSpec& g, const Profile& p) {
    g.validate(p);
    std::vector<std::pair<Node, Node>> out;
    for (const auto& mv : profitable_swaps(g, p)) out.emplace_back(mv.u, mv.v);
    return out;
  });
  m.def("apply_swap", [](const Profile& p, Node u, Node v) { return apply_swap(p, {u, v}); });
  m.def(
      "run_dynamics",
      [](const GameSpec& g, const Profile& start, const std::string& policy, std::uint64_t seed, std::size_t max_steps) {
        g.validate(start);
        return to_py(to_json(run_dynamics(g, start, SwapPolicy::parse(policy, seed), max_steps)));
      },
      py::arg("game"), py::arg("start"), py::arg("policy") = "first-lex", py::arg("seed") = 1,
      py::arg("max_steps") = 10000);
  m.def(
      "improving_cycle",
      [](const GameSpec& g, std::uint64_t budget, unsigned threads) -> py::object {
        const auto c = has_improving_cycle(g, budget, threads);
        if (!c) return py::none();
        std::vector<std::pair<Node, Node>> moves;
        for (const auto& mv : c->moves) moves.emplace_back(mv.u, mv.v);
        return py::dict(py::arg("profiles") = c->profiles, py::arg("moves") = moves);
      },
      py::arg("game"), py::arg("budget") = kDefaultEnumerationBudget, py::arg("threads") = 0);

  m.def("is_swap_equilibrium", [](const GameSpec& g, const Profile& p) {
    g.validate(p);
    return is_swap_equilibrium(g, p).is_se;
  });
  m.def(
      "optimal_doi",
      [](const GameSpec& g, std::uint64_t budget, unsigned threads) {
        const auto r = optimal_doi(g, enumeration(budget, threads));
        return py::make_tuple(r.value, r.witness);
      },
      py::arg("game"), py::arg("budget") = kDefaultEnumerationBudget, py::arg("threads") = 0);
  m.def(
      "analyze",
      [](const GameSpec& g, std::uint64_t budget, unsigned threads, std::uint64_t alpha_budget) {
        return to_py(to_json(analyze(g, enumeration(budget, threads), alpha_budget)));
      },
      py::arg("game"), py::arg("budget") = kDefaultEnumerationBudget, py::arg("threads") = 0,
      py::arg("alpha_budget") = kDefaultAlphaBudget);
  m.def(
      "equilibria",
      [](const GameSpec& g, std::uint64_t budget, unsigned threads) {
        return all_equilibria(g, enumeration(budget, threads));
      },
      py::arg("game"), py::arg("budget") = kDefaultEnumerationBudget, py::arg("threads") = 0);

  m.def("independent_set_placement", [](const GameSpec& g, const std::vector<Node>& nodes) {
    return independent_set_placement(g, NodeSet(g.n(), nodes));
  });
  m.def("bipartite_se_from_optimum", &bipartite_se_from_optimum);
  m.def(
      "phi_minimum",
      [](const GameSpec& g, const std::string& mode, std::uint64_t seed) {
        PhiMinimization how;
        if (mode == "local")
          how.mode = PhiMinimization::Mode::LocalSearch;
        else if (mode != "global")
          throw InvalidInput("mode must be 'global' or 'local'");
        how.seed = seed;
        return phi_minimum_profile(g, how);
      },
      py::arg("game"), py::arg("mode") = "global", py::arg("seed") = 0);
  m.def("se_repair", [](const GameSpec& g, const Profile& start) {
    g.validate(start);
    return to_py(to_json(se_repair_bounded_degree(g, start)));
  });
  m.def("hierarchical", [](const GameSpec& g, const Profile& opt) {
    g.validate(opt);
    return to_py(to_json(hierarchical_pos_construction(g, opt)));
  });
  m.def("certify", [](const GameSpec& g, const Profile& p) {
    g.validate(p);
    return to_py(to_json(certify(g, p)));
  });
  const auto cut_to_py = [](const KPartition& kp) {
    std::vector<std::vector<Node>> parts;
    for (const auto& p : kp.parts) parts.push_back(p.to_vector());
    return parts;
  };
  m.def("greedy_k_max_cut",
        [cut_to_py](const Graph& g, std::size_t k) { return cut_to_py(greedy_k_max_cut(g, NodeSet::full(g.n()), k)); });
  m.def("balanced_k_max_cut", [cut_to_py](const Graph& g, std::size_t k) {
    const auto c = balanced_k_max_cut(g, NodeSet::full(g.n()), k);
    return py::make_tuple(cut_to_py(c.partition), c.distinguished);
  });

  // Gallery instances come back as (game, profiles, expected JSON).
  const auto instance = [](const NamedInstance& inst) {
    return py::make_tuple(inst.game, inst.profiles, to_py(to_json(inst).at("expected")));
  };
  m.def("no_se_ring", [instance](const std::string& lam) { return instance(no_se_ring(lambda_arg(lam))); },
        py::arg("lam") = "3/4");
  m.def("poa_ring", [instance](std::size_t b, const std::string& lam) {
    return instance(poa_ring_instance(b, lambda_arg(lam)));
  }, py::arg("b") = 2, py::arg("lam") = "1/2");
  m.def("poa_regular", [instance](std::size_t delta, std::size_t lower, const std::string& lam) {
    return instance(poa_regular_instance(delta, lower, lambda_arg(lam)));
  }, py::arg("delta") = 2, py::arg("lower_nodes") = 12, py::arg("lam") = "1/2");
  m.def("pos_general", [instance](std::size_t q, std::size_t b, const std::string& lam) {
    return instance(pos_general_instance(q, b, lambda_arg(lam)));
  }, py::arg("q") = 2, py::arg("b") = 2, py::arg("lam") = "1/2");
  m.def("pos_bipartite", [instance](std::size_t b) { return instance(pos_bipartite_instance(b)); }, py::arg("b") = 2);
  m.def("dominating_set_reduction", [instance](const Graph& g, std::size_t k, const std::string& lam) {
    return instance(dominating_set_reduction(g, k, lambda_arg(lam)));
  }, py::arg("cubic"), py::arg("k"), py::arg("lam") = "1/2");
  m.def("vertex_cover_reduction", [instance](const Graph& g, const std::string& lam) {
    return instance(vertex_cover_reduction(g, lambda_arg(lam)));
  }, py::arg("cubic"), py::arg("lam") = "1/2");

  m.def("to_dot", [](const Graph& g, const std::optional<Profile>& p) { return to_dot(g, p ? &*p : nullptr); },
        py::arg("graph"), py::arg("profile") = py::none());
}
