#include "hlvu/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "hlvu/error.hpp"
#include "hlvu/oracle.hpp"
#include "hlvu/parsers.hpp"
#include "hlvu/protocol.hpp"
#include "hlvu/querygen.hpp"
#include "hlvu/scoring.hpp"
#include "hlvu/stats.hpp"
#include "hlvu/xml.hpp"

namespace fs = std::filesystem;

namespace hlvu {

namespace {

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Content problems already reported as diagnostics.
struct ReportedFailure {};

struct RunConfig {
  std::string graph;
  std::string format;
  std::string ontology;
  std::string movie;
  std::uint64_t seed = 42;
  std::size_t count_a = 5;
  std::size_t count_b = 5;
  std::size_t count_c = 2;
  std::size_t n_options = 5;
  std::size_t max_edges = kDefaultMaxEdges;
  std::size_t vars = 2;
  std::size_t triples = 4;
  bool require_unique = false;
  bool allow_new_relations = false;
  std::string out;
  std::string team = "oracle";
  std::vector<std::string> queries;
  std::vector<std::string> keys;
  std::vector<std::string> submissions;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("cannot write " + path.string());
}

fs::path output_dir(const RunConfig& config) {
  fs::path dir = config.out.empty() ? fs::path(".") : fs::path(config.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string());
  return dir;
}

std::string graph_format(const RunConfig& config) {
  if (!config.format.empty()) return config.format;
  std::string ext = fs::path(config.graph).extension().string();
  if (ext == ".tgf") return "tgf";
  if (ext == ".xgml" || ext == ".gml") return "xgml";
  throw IoError("cannot tell the format of " + config.graph + "; pass --format tgf|xgml");
}

// Loads the graph, printing diagnostics. Throws ReportedFailure on errors.
KnowledgeGraph load_graph(const RunConfig& config, std::ostream& err) {
  std::string format = graph_format(config);
  std::string ontology_text = read_file(config.ontology);
  std::string graph_text = read_file(config.graph);
  RelationOntology ontology;
  try {
    ontology = load_ontology(ontology_text);
  } catch (const OntologyError& e) {
    err << config.ontology << ": error: " << e.what() << '\n';
    throw ReportedFailure{};
  }
  ParseOptions options{config.allow_new_relations};
  GraphParseResult result = format == "tgf" ? parse_tgf(graph_text, ontology, options)
                                            : parse_xgml(graph_text, ontology, options);
  for (const ParseDiagnostic& d : result.diagnostics)
    err << format_diagnostic(d, config.graph) << '\n';
  if (!result.ok()) throw ReportedFailure{};
  return std::move(*result.graph);
}

std::string movie_name(const RunConfig& config) {
  return config.movie.empty() ? fs::path(config.graph).stem().string() : config.movie;
}

Parameters echo_parameters(const RunConfig& config) {
  return {
      {"allow_new_relations", config.allow_new_relations ? "true" : "false"},
      {"count_a", std::to_string(config.count_a)},
      {"count_b", std::to_string(config.count_b)},
      {"count_c", std::to_string(config.count_c)},
      {"graph", fs::path(config.graph).filename().string()},
      {"max_edges", std::to_string(config.max_edges)},
      {"n_options", std::to_string(config.n_options)},
      {"require_unique", config.require_unique ? "true" : "false"},
      {"seed", std::to_string(config.seed)},
      {"triples_per_query", std::to_string(config.triples)},
      {"vars_per_query", std::to_string(config.vars)},
  };
}

int cmd_validate_graph(const RunConfig& config, std::ostream& out, std::ostream& err) {
  KnowledgeGraph graph = load_graph(config, err);
  out << config.graph << ": ok (" << graph.node_count() << " nodes, "
      << graph.edge_count() << " edges)\n";
  return kExitOk;
}

int cmd_stats(const RunConfig& config, std::ostream& out, std::ostream& err) {
  out << format_stats(compute_stats(load_graph(config, err)));
  return kExitOk;
}

// Re-derives every answer key with the oracle before anything is written.
void self_check(const KnowledgeGraph& graph, const QueryDocument& doc) {
  auto mismatch = [](const std::string& id) {
    throw Error("self-check failed: answer key of " + id + " differs from the oracle");
  };
  std::visit(
      [&](const auto& list) {
        for (const auto& q : list) {
          using T = std::decay_t<decltype(q)>;
          if constexpr (std::is_same_v<T, FillQuery>) {
            std::set<Binding> solved = solve_pattern(graph, q.triples);
            if (q.key.empty() || std::set<Binding>(q.key.begin(), q.key.end()) != solved)
              mismatch(q.id);
          } else if constexpr (std::is_same_v<T, ChoiceQuery>) {
            if (answer_choice(graph, q.subject, q.object, q.options) !=
                std::vector<std::size_t>{q.key.value()})
              mismatch(q.id);
          } else {
            if (q.key.empty() ||
                enumerate_paths(graph, q.source, q.target, q.max_edges) != q.key)
              mismatch(q.id);
            for (const Path& p : q.key)
              if (!validate_path(graph, q, p).valid) mismatch(q.id);
          }
        }
      },
      doc.queries);
}

int cmd_gen_queries(const RunConfig& config, std::ostream& out, std::ostream& err) {
  KnowledgeGraph graph = load_graph(config, err);
  fs::path dir = output_dir(config);

  std::vector<QueryDocument> docs;
  auto make_doc = [&](QueryList list) {
    docs.push_back(QueryDocument{movie_name(config), echo_parameters(config), std::move(list)});
  };
  if (config.count_a > 0)
    make_doc(generate_fill(graph, config.seed,
                           FillParams{config.count_a, config.vars, config.triples,
                                      config.require_unique}));
  if (config.count_b > 0)
    make_doc(generate_choice(graph, config.seed, config.count_b, config.n_options));
  if (config.count_c > 0)
    make_doc(generate_path(graph, config.seed, config.count_c, config.max_edges));

  for (const QueryDocument& doc : docs) {
    self_check(graph, doc);
    err << "self-check passed: type " << type_letter(doc.type()) << ", " << doc.size()
        << " queries\n";
  }
  for (const QueryDocument& doc : docs) {
    std::string letter(1, type_letter(doc.type()));
    fs::path queries = dir / ("queries-" + letter + ".xml");
    fs::path key = dir / ("key-" + letter + ".xml");
    write_file(queries, emit_query_xml(doc));
    write_file(key, emit_key_xml(doc));
    out << "wrote " << queries.string() << " and " << key.string() << '\n';
  }
  return kExitOk;
}

Submission oracle_submission(const KnowledgeGraph& graph, const QueryDocument& doc,
                             const std::string& team) {
  Submission sub;
  sub.type = doc.type();
  sub.team = team;
  sub.movie = doc.movie;
  sub.parameters = doc.parameters;
  std::visit(
      [&](const auto& list) {
        for (const auto& q : list) {
          using T = std::decay_t<decltype(q)>;
          if constexpr (std::is_same_v<T, FillQuery>) {
            FillAnswers answers;
            std::map<std::string, std::set<NodeId>> nodes;
            for (const Binding& b : solve_pattern(graph, q.triples))
              for (const auto& [var, node] : b) nodes[var].insert(node);
            for (const auto& [var, candidates] : nodes)
              for (const NodeId& node : candidates)
                answers.by_variable[var].push_back(RankedAnswer{node, 1.0});
            sub.fill[q.id] = std::move(answers);
          } else if constexpr (std::is_same_v<T, ChoiceQuery>) {
            ChoiceAnswer answer;
            auto holding = answer_choice(graph, q.subject, q.object, q.options);
            if (!holding.empty()) answer.label = q.options[holding.front()];
            sub.choice[q.id] = std::move(answer);
          } else {
            sub.paths[q.id] = PathAnswers{
                enumerate_paths(graph, q.source, q.target, q.max_edges), 0};
          }
        }
      },
      doc.queries);
  return sub;
}

int cmd_answer(const RunConfig& config, std::ostream& out, std::ostream& err) {
  KnowledgeGraph graph = load_graph(config, err);
  fs::path dir = output_dir(config);
  std::vector<std::pair<fs::path, std::string>> outputs;
  for (const std::string& file : config.queries) {
    QueryDocument doc = parse_query_xml(read_file(file));
    Submission sub;
    try {
      sub = oracle_submission(graph, doc, config.team);
    } catch (const QueryError& e) {
      throw Error(file + ": queries do not match the graph: " + e.what());
    }
    fs::path target =
        dir / (std::string("submission-") + type_letter(doc.type()) + ".xml");
    outputs.emplace_back(target, emit_submission_xml(sub));
  }
  for (const auto& [path, content] : outputs) {
    write_file(path, content);
    out << "wrote " << path.string() << '\n';
  }
  return kExitOk;
}

std::string fmt_line(const std::string& file, const SubmissionDiagnostic& d) {
  std::string out = file + ":" + std::to_string(d.line) + ": ";
  if (!d.query_id.empty()) out += "query " + d.query_id + ": ";
  return out + d.message;
}

int cmd_score(const RunConfig& config, std::ostream& out, std::ostream& err) {
  KnowledgeGraph graph = load_graph(config, err);
  fs::path dir = output_dir(config);

  std::map<QueryType, QueryDocument> keys;
  for (const std::string& file : config.keys) {
    QueryDocument doc = parse_key_xml(read_file(file));
    if (keys.contains(doc.type()))
      throw Error(file + ": more than one key file of type " +
                  std::string(1, type_letter(doc.type())));
    keys.emplace(doc.type(), std::move(doc));
  }
  if (keys.empty()) throw IoError("score needs at least one --keys file");

  std::vector<std::string> diagnostics;
  std::map<QueryType, Submission> submissions;
  std::optional<std::string> team;
  for (const std::string& file : config.submissions) {
    std::string text = read_file(file);
    xml::Element root = xml::parse(text);
    std::optional<QueryType> type;
    for (auto& [t, doc] : keys)
      if (root.name == std::string("Q") + type_letter(t)) type = t;
    if (!type) throw Error(file + ": no key file for submission root <" + root.name + ">");
    if (submissions.contains(*type)) throw Error(file + ": second submission of the same type");
    Submission sub = parse_submission_xml(text, keys.at(*type));
    if (team && *team != sub.team)
      throw Error(file + ": submissions come from different teams ('" + *team + "', '" +
                  sub.team + "')");
    team = sub.team;
    for (const SubmissionDiagnostic& d : sub.diagnostics)
      diagnostics.push_back(fmt_line(file, d));
    submissions.emplace(*type, std::move(sub));
  }

  std::vector<QueryScore> scores;
  Parameters parameters;
  for (const auto& [type, key] : keys) {
    parameters.insert(key.parameters.begin(), key.parameters.end());
    auto it = submissions.find(type);
    Submission empty;
    empty.type = type;
    if (it == submissions.end())
      diagnostics.push_back(std::string("no submission for type ") + type_letter(type) +
                            "; scored as empty");
    const Submission& sub = it == submissions.end() ? empty : it->second;
    std::vector<QueryScore> part = score_submission(graph, key, sub);
    scores.insert(scores.end(), part.begin(), part.end());
  }

  ScoreReport report = aggregate(scores);
  report.team = team.value_or("");
  report.parameters = parameters;
  report.diagnostics = diagnostics;
  std::string text = report_to_text(report);
  write_file(dir / "report.txt", text);
  write_file(dir / "report.json", report_to_json(report));
  out << text;
  return kExitOk;
}

void add_graph_options(CLI::App* cmd, RunConfig& config) {
  cmd->add_option("--graph", config.graph, "Ground-truth graph file")->required();
  cmd->add_option("--format", config.format, "Graph format (default: from extension)")
      ->check(CLI::IsMember({"tgf", "xgml"}));
  cmd->add_option("--ontology", config.ontology, "Ontology file")->required();
  cmd->add_flag("--allow-new-relations", config.allow_new_relations,
                "Accept unknown relations as self-inverse");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"HLVU knowledge-graph query generator and scorer", "hlvu"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate-graph", "Parse a graph and report diagnostics");
  add_graph_options(validate, config);

  auto* stats = app.add_subcommand("stats", "Print node, edge and connectivity counts");
  add_graph_options(stats, config);

  auto* gen = app.add_subcommand("gen-queries", "Generate query files and answer keys");
  add_graph_options(gen, config);
  gen->add_option("--seed", config.seed, "Random seed");
  gen->add_option("--count-a", config.count_a, "Number of fill-in queries");
  gen->add_option("--count-b", config.count_b, "Number of multiple-choice queries");
  gen->add_option("--count-c", config.count_c, "Number of path queries");
  gen->add_option("--n-options", config.n_options, "Options per multiple-choice query")
      ->check(CLI::PositiveNumber);
  gen->add_option("--max-edges", config.max_edges, "Longest path in path-query keys")
      ->check(CLI::PositiveNumber);
  gen->add_option("--vars", config.vars, "Variables per fill-in query")
      ->check(CLI::Range(1, 3));
  gen->add_option("--triples", config.triples, "Triples per fill-in query")
      ->check(CLI::Range(1, 6));
  gen->add_flag("--require-unique", config.require_unique,
                "Keep only fill-in patterns with exactly one solution");
  gen->add_option("--movie", config.movie, "Movie name (default: graph file stem)");
  gen->add_option("--out", config.out, "Output directory");

  auto* answer = app.add_subcommand("answer", "Write the oracle's submission for query files");
  add_graph_options(answer, config);
  answer->add_option("--queries", config.queries, "Query file(s)")->required();
  answer->add_option("--team", config.team, "Team name for the submission");
  answer->add_option("--out", config.out, "Output directory");

  auto* score = app.add_subcommand("score", "Score submissions against answer keys");
  add_graph_options(score, config);
  score->add_option("--keys", config.keys, "Answer key file(s)")->required();
  score->add_option("--submission", config.submissions, "Submission file(s)");
  score->add_option("--out", config.out, "Output directory for report.txt/report.json");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "hlvu: " << e.what() << '\n';
    return kExitUsageError;
  }

  try {
    if (validate->parsed()) return cmd_validate_graph(config, out, err);
    if (stats->parsed()) return cmd_stats(config, out, err);
    if (gen->parsed()) return cmd_gen_queries(config, out, err);
    if (answer->parsed()) return cmd_answer(config, out, err);
    if (score->parsed()) return cmd_score(config, out, err);
  } catch (const IoError& e) {
    err << "hlvu: " << e.what() << '\n';
    return kExitUsageError;
  } catch (const ReportedFailure&) {
    return kExitContentError;
  } catch (const Error& e) {
    err << "hlvu: " << e.what() << '\n';
    return kExitContentError;
  }
  return kExitUsageError;
}

}  // namespace hlvu
