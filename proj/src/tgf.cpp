#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <tuple>

#include "hlvu/error.hpp"
#include "hlvu/parsers.hpp"

namespace hlvu {

std::size_t GraphParseResult::error_count() const {
  return static_cast<std::size_t>(std::count_if(
      diagnostics.begin(), diagnostics.end(), [](const ParseDiagnostic& d) {
        return d.severity == ParseDiagnostic::Severity::error;
      }));
}

std::string format_diagnostic(const ParseDiagnostic& diagnostic,
                              std::string_view source) {
  std::ostringstream out;
  out << source << ':' << diagnostic.line << ": "
      << (diagnostic.severity == ParseDiagnostic::Severity::error ? "error"
                                                                  : "warning")
      << ": " << diagnostic.message;
  return out.str();
}

namespace detail {

void GraphAssembler::warning(std::size_t line, std::string message) {
  diagnostics_.push_back(
      {ParseDiagnostic::Severity::warning, line, std::move(message)});
}

void GraphAssembler::error(std::size_t line, std::string message) {
  failed_ = true;
  diagnostics_.push_back(
      {ParseDiagnostic::Severity::error, line, std::move(message)});
}

std::optional<NodeId> GraphAssembler::add_node(std::size_t line,
                                               std::string_view label) {
  try {
    NodeId id = NodeId::parse(label);
    if (!graph_.add_node(id))
      warning(line, "node " + id.str() + " declared more than once; merged");
    return id;
  } catch (const Error& e) {
    error(line, e.what());
    return std::nullopt;
  }
}

void GraphAssembler::add_edge(std::size_t line, const NodeId& src,
                              const NodeId& dst, std::string_view relation) {
  try {
    RelationLabel label(relation);
    if (!graph_.ontology().contains(label)) {
      if (!options_.allow_new_relations) {
        error(line, "unknown relation: " + label.str());
        return;
      }
      graph_.extend_ontology(label, label);
      warning(line, "new relation '" + label.str() + "' assumed self-inverse");
    }
    graph_.add_edge(Edge{src, label, dst});
  } catch (const DuplicateEdgeError& e) {
    warning(line, std::string(e.what()) + "; dropped");
  } catch (const Error& e) {
    error(line, e.what());
  }
}

GraphParseResult GraphAssembler::finish() {
  GraphParseResult result;
  result.diagnostics = std::move(diagnostics_);
  if (!failed_) result.graph = std::move(graph_);
  return result;
}

}  // namespace detail

namespace {

std::string_view trim(std::string_view text) {
  const char* ws = " \t\r\v\f";
  auto first = text.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

// Splits off the first whitespace-delimited token.
std::pair<std::string_view, std::string_view> next_token(std::string_view text) {
  text = trim(text);
  auto end = text.find_first_of(" \t");
  if (end == std::string_view::npos) return {text, {}};
  return {text.substr(0, end), trim(text.substr(end))};
}

std::optional<long long> parse_int(std::string_view token) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) return std::nullopt;
  return value;
}

}  // namespace

GraphParseResult parse_tgf(std::string_view text,
                           const RelationOntology& ontology,
                           const ParseOptions& options) {
  detail::GraphAssembler assembler(ontology, options);
  std::map<long long, NodeId> ids;
  bool in_edges = false;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) continue;

    if (line == "#") {
      if (in_edges)
        assembler.error(line_no, "second '#' separator line");
      in_edges = true;
      continue;
    }

    auto [first, rest] = next_token(line);
    auto first_id = parse_int(first);
    if (!first_id) {
      assembler.error(line_no, "expected a numeric id, found '" +
                                   std::string(first) + "'");
      continue;
    }

    if (!in_edges) {
      if (rest.empty()) {
        assembler.error(line_no, "node " + std::string(first) + " has no label");
        continue;
      }
      if (ids.contains(*first_id)) {
        assembler.error(line_no, "node id " + std::string(first) +
                                     " declared more than once");
        continue;
      }
      if (auto id = assembler.add_node(line_no, rest)) ids.emplace(*first_id, *id);
      continue;
    }

    auto [second, relation] = next_token(rest);
    auto second_id = parse_int(second);
    if (!second_id) {
      assembler.error(line_no, "edge target '" + std::string(second) +
                                   "' is not a numeric id");
      continue;
    }
    if (relation.empty()) {
      assembler.error(line_no, "edge has no relation label");
      continue;
    }
    auto src = ids.find(*first_id);
    auto dst = ids.find(*second_id);
    if (src == ids.end() || dst == ids.end()) {
      assembler.error(line_no, "edge references undeclared node id " +
                                   std::string(src == ids.end() ? first : second));
      continue;
    }
    assembler.add_edge(line_no, src->second, dst->second, relation);
  }

  if (!in_edges)
    assembler.error(std::max<std::size_t>(line_no, 1),
                    "missing '#' separator line between nodes and edges");
  return assembler.finish();
}

std::string emit_tgf(const KnowledgeGraph& graph) {
  std::ostringstream out;
  std::map<NodeId, std::size_t> number;
  for (const NodeId& id : graph.nodes()) {
    std::size_t n = number.size() + 1;
    number.emplace(id, n);
    out << n << ' ' << id.str() << '\n';
  }
  out << "#\n";

  std::vector<const Edge*> edges;
  for (const Edge& e : graph.edges()) edges.push_back(&e);
  std::sort(edges.begin(), edges.end(), [](const Edge* a, const Edge* b) {
    return std::tie(a->src, a->dst, a->relation) <
           std::tie(b->src, b->dst, b->relation);
  });
  for (const Edge* e : edges)
    out << number.at(e->src) << ' ' << number.at(e->dst) << ' '
        << e->relation.str() << '\n';
  return out.str();
}

}  // namespace hlvu
