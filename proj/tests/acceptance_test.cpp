// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "hlvu/cli.hpp"
#include "hlvu/error.hpp"
#include "hlvu/oracle.hpp"
#include "hlvu/parsers.hpp"
#include "hlvu/protocol.hpp"
#include "hlvu/querygen.hpp"
#include "hlvu/scoring.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace hlvu;
using testing::entity;
using testing::location;
using testing::person;
using testing::rel;

namespace {

struct Check {
  bool ok = true;
  std::string detail;

  void expect(bool condition, const std::string& what) {
    if (!condition && ok) {
      ok = false;
      detail = what;
    }
  }
};

using Criterion = std::function<Check()>;

Path make_path(std::vector<NodeId> nodes, std::vector<std::string> relations) {
  Path p{std::move(nodes), {}};
  for (const std::string& r : relations) p.relations.emplace_back(r);
  return p;
}

Check mrr_worked_example() {
  Check c;
  FillQuery q;
  q.id = "Q.Id.1";
  q.variables = {{"Unknown_1", std::nullopt}, {"Unknown_2", std::nullopt},
                 {"Unknown_3", std::nullopt}};
  q.key = {{{"Unknown_1", person("Homer")},
            {"Unknown_2", person("Lenny")},
            {"Unknown_3", person("Ned Flanders")}}};
  FillAnswers a;
  a.by_variable["Unknown_1"] = {{person("Marge"), 0.9}, {person("Homer"), 0.8}};
  a.by_variable["Unknown_2"] = {{person("Lenny"), 0.9}};
  a.by_variable["Unknown_3"] = {{person("Bart"), 0.9}, {person("Lisa"), 0.8},
                                {person("Marge"), 0.7}, {person("Ned Flanders"), 0.6}};
  FillScore s = score_fill(q, a);
  c.expect(std::abs(s.mrr - 7.0 / 12.0) <= 1e-12, "MRR " + std::to_string(s.mrr));
  if (c.ok) c.detail = "ranks {2, 1, 4} give MRR 7/12";
  return c;
}

Check fill_worked_example() {
  Check c;
  KnowledgeGraph g = testing::simpsons_graph();
  std::vector<PatternTriple> pattern = {
      {Variable{"X", std::nullopt}, rel("Spouse of"), person("Marge")},
      {Variable{"X", std::nullopt}, rel("Friend of"), person("Lenny")},
      {Variable{"Y", std::nullopt}, rel("Volunteers at"), location("Church")},
      {Variable{"Y", std::nullopt}, rel("Neighbor of"), Variable{"X", std::nullopt}},
  };
  auto solutions = solve_pattern(g, pattern);
  std::set<Binding> expected = {{{"X", person("Homer")}, {"Y", person("Ned Flanders")}}};
  c.expect(solutions == expected,
           std::to_string(solutions.size()) + " solutions, expected exactly one");
  if (c.ok) c.detail = "unique solution X = Homer, Y = Ned Flanders";
  return c;
}

Check path_worked_example() {
  Check c;
  KnowledgeGraph g = testing::simpsons_graph();
  const NodeId chalmers = person("Superintendent Chalmers"), lenny = person("Lenny");
  const NodeId school = entity("Springfield Elementary");
  std::set<Path> expected = {
      make_path({chalmers, person("Principal Skinner"), location("Church"), person("Homer"), lenny},
                {"Supervisor of", "Attends", "Attended By", "Friend of"}),
      make_path({chalmers, school, person("Bart"), person("Homer"), lenny},
                {"Superintendent at", "Studied at by", "Child of", "Friend of"}),
      make_path({chalmers, school, person("Lisa"), person("Homer"), lenny},
                {"Superintendent at", "Studied at by", "Child of", "Friend of"}),
  };
  auto paths = enumerate_paths(g, chalmers, lenny, 4);
  c.expect(paths.size() == 3, std::to_string(paths.size()) + " paths");
  c.expect(std::set<Path>(paths.begin(), paths.end()) == expected, "route set differs");
  PathQuery q{"Q.Id.1", chalmers, lenny, 4, {}};
  for (const Path& p : paths) {
    PathVerdict v = validate_path(g, q, p);
    c.expect(v.valid, "route rejected: " + v.reason);
  }
  if (c.ok) c.detail = "3 four-edge routes, all valid";
  return c;
}

Check degree_worked_example() {
  Check c;
  KnowledgeGraph g = testing::simpsons_graph();
  std::size_t d = g.degree_by_relation(person("Marge"), rel("Parent of"));
  c.expect(d == 2, "degree " + std::to_string(d));
  if (c.ok) c.detail = "Marge has 2 'Parent of' neighbors";
  return c;
}

Check f1_derived() {
  Check c;
  KnowledgeGraph g = testing::simpsons_graph();
  PathQuery q{"Q.Id.1", person("Superintendent Chalmers"), person("Lenny"), 4, {}};
  q.key = enumerate_paths(g, q.source, q.target, q.max_edges);
  Path invalid = q.key[0];
  invalid.relations[0] = rel("Spouse of");
  PathScore s = score_paths(g, q, PathAnswers{{q.key[0], q.key[2], invalid}, 1});
  c.expect(std::abs(s.recall - 2.0 / 3.0) <= 1e-12, "recall " + std::to_string(s.recall));
  c.expect(std::abs(s.precision - 0.5) <= 1e-12, "precision " + std::to_string(s.precision));
  c.expect(std::abs(s.f1 - 4.0 / 7.0) <= 1e-12, "F1 " + std::to_string(s.f1));
  if (c.ok) c.detail = "recall 2/3, precision 1/2, F1 4/7";
  return c;
}

Check oracle_equivalence() {
  Check c;
  std::mt19937_64 rng(2024);
  int pattern_graphs = 0, path_graphs = 0;
  std::size_t nonempty = 0;
  while (pattern_graphs < 200) {
    KnowledgeGraph g = testing::random_graph(rng, 12, 24, testing::random_ontology(rng, 2));
    if (g.node_count() < 2) continue;
    ++pattern_graphs;
    for (int k = 0; k < 5; ++k) {
      auto pattern = testing::random_pattern(rng, g);
      auto naive = testing::naive_solve(g, pattern);
      nonempty += !naive.empty();
      c.expect(solve_pattern(g, pattern) == naive,
               "pattern mismatch on graph " + std::to_string(pattern_graphs));
    }
  }
  while (path_graphs < 200) {
    KnowledgeGraph g = testing::random_graph(rng, 10, 18, testing::random_ontology(rng, 2));
    std::vector<NodeId> nodes = g.nodes();
    if (nodes.size() < 2) continue;
    ++path_graphs;
    for (int k = 0; k < 3; ++k) {
      const NodeId& s = nodes[rng() % nodes.size()];
      const NodeId& t = nodes[rng() % nodes.size()];
      if (s == t) continue;
      std::size_t max_edges = 1 + rng() % 6;
      auto paths = enumerate_paths(g, s, t, max_edges);
      c.expect(std::set<Path>(paths.begin(), paths.end()) ==
                       testing::matrix_paths(g, s, t, max_edges) &&
                   std::set<Path>(paths.begin(), paths.end()).size() == paths.size(),
               "path mismatch on graph " + std::to_string(path_graphs));
    }
  }
  c.expect(nonempty > 200, "too few satisfiable patterns sampled");
  if (c.ok)
    c.detail = std::to_string(nonempty) +
               " satisfiable patterns of 1000, path sets on 200 graphs";
  return c;
}

Check round_trips() {
  Check c;
  std::mt19937_64 rng(2025);
  for (int i = 0; i < 500; ++i) {
    RelationOntology o = testing::random_ontology(rng, 1 + i % 4);
    KnowledgeGraph g = testing::random_graph(rng, 12, 30, o);
    auto tgf = parse_tgf(emit_tgf(g), o);
    auto xgml = parse_xgml(emit_xgml(g), o);
    c.expect(tgf.ok() && *tgf.graph == g, "TGF round-trip failed on graph " + std::to_string(i));
    c.expect(xgml.ok() && *xgml.graph == g, "XGML round-trip failed on graph " + std::to_string(i));
    c.expect(tgf.ok() && xgml.ok() && *tgf.graph == *xgml.graph,
             "cross-format mismatch on graph " + std::to_string(i));
  }

  KnowledgeGraph simpsons = testing::simpsons_graph();
  auto fixture_xgml = parse_xgml(testing::read_text(testing::data_path("simpsons.xgml")),
                                 testing::simpsons_ontology());
  c.expect(fixture_xgml.ok() && *fixture_xgml.graph == simpsons,
           "XGML and TGF fixtures differ");

  std::size_t documents = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    Parameters params = {{"seed", std::to_string(seed)}};
    std::vector<QueryDocument> docs = {
        {"simpsons", params, generate_fill(simpsons, seed, FillParams{})},
        {"simpsons", params, generate_choice(simpsons, seed, 5, 5)},
        {"simpsons", params, generate_path(simpsons, seed, 2, 6)},
    };
    for (const QueryDocument& d : docs) {
      ++documents;
      c.expect(parse_query_xml(emit_query_xml(d)) == strip_keys(d),
               "query XML round-trip failed at seed " + std::to_string(seed));
      c.expect(parse_key_xml(emit_key_xml(d)) == d,
               "key XML round-trip failed at seed " + std::to_string(seed));
    }
  }
  if (c.ok)
    c.detail = "500 graphs in both formats, " + std::to_string(documents) +
               " query documents";
  return c;
}

struct CliRun {
  int code;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

// Full validate -> gen -> answer -> score pipeline into `dir`.
std::optional<std::string> pipeline(const fs::path& dir, const std::string& seed) {
  const std::vector<std::string> graph = {"--graph", testing::data_path("simpsons.tgf"),
                                          "--ontology", testing::data_path("simpsons.ont")};
  auto with = [&](std::vector<std::string> head, std::vector<std::string> tail) {
    head.insert(head.end(), graph.begin(), graph.end());
    head.insert(head.end(), tail.begin(), tail.end());
    return head;
  };
  const std::string d = dir.string();
  if (cli(with({"validate-graph"}, {})).code != 0) return "validate-graph failed";
  CliRun gen = cli(with({"gen-queries"}, {"--seed", seed, "--out", d}));
  if (gen.code != 0) return "gen-queries failed: " + gen.err;
  if (cli(with({"answer"}, {"--queries", d + "/queries-A.xml", d + "/queries-B.xml",
                            d + "/queries-C.xml", "--out", d}))
          .code != 0)
    return "answer failed";
  CliRun score = cli(with({"score"}, {"--keys", d + "/key-A.xml", d + "/key-B.xml",
                                      d + "/key-C.xml", "--submission", d + "/submission-A.xml",
                                      d + "/submission-B.xml", d + "/submission-C.xml",
                                      "--out", d}));
  if (score.code != 0) return "score failed: " + score.err;
  return std::nullopt;
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("hlvu_acceptance_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

Check end_to_end_maximum() {
  Check c;
  int seeds = 0;
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    fs::path dir = scratch("e2e");
    if (auto err = pipeline(dir, std::to_string(seed))) {
      c.expect(false, "seed " + std::to_string(seed) + ": " + *err);
      break;
    }
    std::string report = testing::read_text((dir / "report.txt").string());
    for (const char* line : {"Type A MRR (mean over queries): 1.000000",
                             "Type A MRR (mean over variables): 1.000000",
                             "Type B accuracy: 1.000000", "Type C recall (macro): 1.000000",
                             "Type C precision (macro): 1.000000",
                             "Type C F1 (macro): 1.000000"})
      c.expect(report.find(line) != std::string::npos,
               "seed " + std::to_string(seed) + ": missing '" + line + "'");
    for (const std::string& marker : {std::string("mrr=0"), std::string(" wrong "),
                                      std::string("f1=0")})
      c.expect(report.find(marker) == std::string::npos,
               "seed " + std::to_string(seed) + ": per-query score below maximum");
    ++seeds;
    fs::remove_all(dir);
  }
  if (c.ok) c.detail = std::to_string(seeds) + " seeds, every query at maximum";
  return c;
}

Check determinism() {
  Check c;
  fs::path one = scratch("seed42_a"), two = scratch("seed42_b");
  for (const fs::path& dir : {one, two})
    if (auto err = pipeline(dir, "42")) c.expect(false, *err);
  std::size_t compared = 0;
  if (c.ok) {
    for (const auto& entry : fs::directory_iterator(one)) {
      std::string name = entry.path().filename().string();
      c.expect(fs::exists(two / name), name + " missing in second run");
      if (!c.ok) break;
      c.expect(testing::read_text(entry.path().string()) ==
                   testing::read_text((two / name).string()),
               name + " differs");
      ++compared;
    }
    c.expect(compared == 11, std::to_string(compared) + " files, expected 11");
  }
  fs::remove_all(one);
  fs::remove_all(two);
  if (c.ok) c.detail = "11 files byte-identical across two runs";
  return c;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, Criterion>> criteria = {
      {"MRR worked example", mrr_worked_example},
      {"fill-pattern worked example", fill_worked_example},
      {"path worked example", path_worked_example},
      {"question-answering worked example", degree_worked_example},
      {"derived F1 check", f1_derived},
      {"oracle equivalence", oracle_equivalence},
      {"round-trips", round_trips},
      {"end-to-end identity", end_to_end_maximum},
      {"determinism", determinism},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = std::chrono::steady_clock::now();
    Check result;
    try {
      result = criteria[i].second();
    } catch (const std::exception& e) {
      result = {false, std::string("exception: ") + e.what()};
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += !result.ok;
    std::cout << (result.ok ? "PASS" : "FAIL") << "  criterion " << i + 1 << ": "
              << criteria[i].first << " (" << result.detail << ") [" << std::fixed
              << std::setprecision(2) << seconds << "s]" << std::endl;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failures) << "/" << criteria.size()
            << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
