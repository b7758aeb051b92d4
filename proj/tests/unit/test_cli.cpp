#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "schelling/io.hpp"

using namespace schelling;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("help and usage errors") {
    CHECK(run({"--help"}).code == cli::kOk);
    CHECK(run({"analyze", "--help"}).out.find("--lambda") != std::string::npos);
    CHECK(run({}).code == cli::kUsage);
    CHECK(run({"frobnicate"}).code == cli::kUsage);
    CHECK(run({"analyze", "--gen", "ring", "--param", "n=6", "--b", "2"}).code == cli::kUsage);
    CHECK(run({"analyze", "--gen", "ring", "--param", "n=6", "--b", "2", "--lambda", "1/0"}).code == cli::kUsage);
    CHECK(run({"analyze", "--graph", "/nonexistent/g.json", "--b", "1", "--lambda", "1/2"}).code == cli::kUsage);
  }

  TEST_CASE("dynamics exit codes") {
    CHECK(run({"dynamics", "--instance", "no-se-ring", "--profile-tag", "start"}).code == cli::kCycle);
    const auto conv = run({"dynamics", "--gen", "random-almost-regular", "--param", "n=10", "--param", "d=3", "--b", "4",
                           "--lambda", "1/3", "--random-start", "--seed", "5"});
    CHECK(conv.code == cli::kOk);
    const Json j = Json::parse(conv.out);
    CHECK(j.at("result").at("outcome").at("kind") == "converged");
    CHECK(j.at("result").at("outcome").at("steps").get<std::size_t>() <=
          j.at("result").at("game").at("graph").at("edges").size());
    CHECK(run({"dynamics", "--instance", "no-se-ring", "--profile-tag", "start", "--max-steps", "0"}).code == cli::kUsage);
    CHECK(run({"dynamics", "--instance", "no-se-ring", "--profile-tag", "start", "--max-steps", "2"}).code == cli::kBudget);
    CHECK(run({"dynamics", "--instance", "no-se-ring", "--profile-tag", "nope"}).code == cli::kUsage);
  }

  TEST_CASE("dynamics writes trace and csv") {
    const auto trace = temp("schelling_cli_trace.jsonl");
    const auto csv = temp("schelling_cli_trace.csv");
    const auto r = run({"dynamics", "--gen", "ring", "--param", "n=8", "--b", "3", "--lambda", "1/2", "--colors", "BBBRRRRR",
                        "--trace", trace, "--csv", csv});
    CHECK(r.code == cli::kOk);
    CHECK_FALSE(read_file(trace).empty());
    CHECK(read_file(csv).rfind("step,u,v", 0) == 0);
    std::filesystem::remove(trace);
    std::filesystem::remove(csv);
  }

  TEST_CASE("analyze") {
    const auto r = run({"analyze", "--instance", "poa-ring", "--threads", "1"});
    CHECK(r.code == cli::kOk);
    const Json j = Json::parse(r.out);
    CHECK(j.at("version") == std::string(kVersion));
    CHECK(j.at("config").at("instance") == "poa-ring");
    CHECK(j.at("result").at("report").at("poa") == "3/2");
    CHECK(run({"analyze", "--instance", "poa-ring", "--threads", "1"}).out == r.out);
    CHECK(run({"analyze", "--gen", "ring", "--param", "n=12", "--b", "6", "--lambda", "1/2", "--budget", "10"}).code ==
          cli::kBudget);
  }

  TEST_CASE("construct") {
    const auto is = run({"construct", "independent-set", "--gen", "ring", "--param", "n=8", "--b", "4", "--lambda", "1/2"});
    CHECK(is.code == cli::kOk);
    CHECK(Json::parse(is.out).at("result").at("certificate").at("is_se") == true);
    const auto repair = run({"construct", "repair", "--gen", "petersen", "--b", "3", "--lambda", "1/2"});
    CHECK(repair.code == cli::kOk);
    const auto hier = run({"construct", "hierarchical", "--gen", "star", "--param", "n=5", "--b", "2", "--lambda", "1/2"});
    CHECK(hier.code == cli::kUsage);
    CHECK(hier.err.find("graph-almost-regular") != std::string::npos);
    CHECK(run({"construct", "balanced-cut", "--gen", "petersen", "--b", "3", "--lambda", "1/2", "--k", "3"}).code == cli::kOk);
    CHECK(run({"construct", "phi-min", "--gen", "clique", "--param", "n=4", "--b", "2", "--lambda", "1/3"}).code == cli::kOk);
    CHECK(run({"construct", "bipartite", "--instance", "pos-bipartite"}).code == cli::kOk);
    CHECK(run({"construct", "teleport", "--instance", "poa-ring"}).code == cli::kUsage);
  }

  TEST_CASE("generate, export, and file inputs") {
    const auto gen = run({"generate", "poa-ring", "--param", "b=4"});
    CHECK(gen.code == cli::kOk);
    const Json inst = Json::parse(gen.out).at("result");
    const auto graph_path = temp("schelling_cli_graph.json");
    const auto profile_path = temp("schelling_cli_profile.json");
    write_file(graph_path, inst.at("graph").dump());
    write_file(profile_path, inst.at("profiles").at("bad_se").dump());
    const auto dyn = run({"dynamics", "--graph", graph_path, "--b", "4", "--lambda", "1/2", "--profile", profile_path});
    CHECK(dyn.code == cli::kOk);
    CHECK(Json::parse(dyn.out).at("result").at("outcome").at("steps") == 0);

    const auto dot = run({"export-dot", "--gen", "ring", "--param", "n=6", "--b", "2", "--lambda", "1/2", "--colors", "BBRRRR"});
    CHECK(dot.code == cli::kOk);
    CHECK(dot.out.rfind("graph G {", 0) == 0);
    CHECK(run({"generate", "petersen"}).code == cli::kOk);
    std::filesystem::remove(graph_path);
    std::filesystem::remove(profile_path);
  }

  TEST_CASE("hunt") {
    const auto r = run({"hunt", "--trials", "5", "--n-max", "8", "--threads", "1"});
    CHECK(r.code == cli::kOk);
    CHECK(Json::parse(r.out).at("result").at("checked") == 5);
  }
}
