#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "schelling/analysis.hpp"
#include "schelling/construct.hpp"
#include "schelling/dynamics.hpp"
#include "schelling/gallery.hpp"
#include "schelling/game.hpp"

namespace schelling {

using Json = nlohmann::json;

inline constexpr std::string_view kVersion = "0.1.0";

// {"n": int, "edges": [[u, v], ...]}
Json to_json(const Graph& g);
Graph graph_from_json(const Json& j);
// One "u v" pair per line; '#' starts a comment; n = largest id + 1.
Graph parse_edge_list(std::string_view text);
// JSON when the first non-blank character is '{', edge list otherwise.
Graph parse_graph(std::string_view text);

// {"blue": [ids]}
Json to_json(const Profile& p);
Profile profile_from_json(const Json& j, std::size_t n);

Json to_json(SwapMove mv);
Json to_json(const BoundCheck& c);
Json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const Json& j);
Json to_json(const DynamicsOutcome& o);
Json to_json(const Certificate& c);
Json to_json(const NamedInstance& inst);
Json to_json(const HierarchicalResult& r);
Json to_json(const RepairResult& r);

// One JSON object per line: {step, move, phi_before, phi_after, doi_after}.
std::string trace_jsonl(const std::vector<TraceStep>& trace);
// step,u,v,phi_before,phi_after,doi_after with a leading step-0 row.
std::string trace_csv(const std::vector<TraceStep>& trace, std::size_t phi_start, std::size_t doi_start);

// Nodes filled by color (or unfilled without a profile); segregated nodes
// get a bold outline.
std::string to_dot(const Graph& g, const Profile* p = nullptr);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace schelling
