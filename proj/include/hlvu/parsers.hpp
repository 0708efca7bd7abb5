#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hlvu/graph.hpp"
#include "hlvu/ontology.hpp"

namespace hlvu {

struct ParseDiagnostic {
  enum class Severity { warning, error };

  Severity severity;
  std::size_t line;  // 1-based
  std::string message;
};

struct ParseOptions {
  // Unknown relation labels become self-inverse ontology entries (with a
  // warning) instead of errors.
  bool allow_new_relations = false;
};

/// Either a graph plus warnings, or no graph and at least one error.
struct GraphParseResult {
  std::optional<KnowledgeGraph> graph;
  std::vector<ParseDiagnostic> diagnostics;

  bool ok() const noexcept { return graph.has_value(); }
  std::size_t error_count() const;
};

/// Trivial graph format: `<int> <Category:name>` node lines, a `#` line,
/// then `<int> <int> <relation>` edge lines.
GraphParseResult parse_tgf(std::string_view text,
                           const RelationOntology& ontology,
                           const ParseOptions& options = {});
std::string emit_tgf(const KnowledgeGraph& graph);

/// GML-style bracket format with `graph`, `node` (id, label) and `edge`
/// (source, target, label) blocks. Other keys are skipped with a warning.
GraphParseResult parse_xgml(std::string_view text,
                            const RelationOntology& ontology,
                            const ParseOptions& options = {});
std::string emit_xgml(const KnowledgeGraph& graph);

/// "<source>:<line>: <severity>: <message>"
std::string format_diagnostic(const ParseDiagnostic& diagnostic,
                              std::string_view source);

namespace detail {

// Shared by both readers: turns file-local ids and labels into graph
// content and records diagnostics with the proper policy.
class GraphAssembler {
 public:
  GraphAssembler(const RelationOntology& ontology, const ParseOptions& options)
      : graph_(ontology), options_(options) {}

  void warning(std::size_t line, std::string message);
  void error(std::size_t line, std::string message);

  // Returns the canonical node on success.
  std::optional<NodeId> add_node(std::size_t line, std::string_view label);
  void add_edge(std::size_t line, const NodeId& src, const NodeId& dst,
                std::string_view relation);

  GraphParseResult finish();

 private:
  KnowledgeGraph graph_;
  ParseOptions options_;
  std::vector<ParseDiagnostic> diagnostics_;
  bool failed_ = false;
};

}  // namespace detail

}  // namespace hlvu
