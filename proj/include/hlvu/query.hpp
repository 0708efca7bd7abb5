#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hlvu/graph.hpp"
#include "hlvu/oracle.hpp"

namespace hlvu {

/// Type A: fill the unknown nodes of a pattern.
struct FillQuery {
  std::string id;
  std::vector<PatternTriple> triples;
  std::vector<Variable> variables;
  std::vector<Binding> key;  // empty when loaded from a participant query file

  friend bool operator==(const FillQuery&, const FillQuery&) = default;
};

/// Type B: pick the relation that holds between subject and object.
struct ChoiceQuery {
  std::string id;
  NodeId subject;
  NodeId object;
  std::vector<RelationLabel> options;
  std::optional<std::size_t> key;  // index into options

  friend bool operator==(const ChoiceQuery&, const ChoiceQuery&) = default;
};

/// Type C: list every simple route from source to target.
struct PathQuery {
  std::string id;
  NodeId source;
  NodeId target;
  std::size_t max_edges = 0;
  std::vector<Path> key;

  friend bool operator==(const PathQuery&, const PathQuery&) = default;
};

enum class QueryType { fill, choice, path };

/// 'A', 'B' or 'C'.
char type_letter(QueryType type);

using QueryList = std::variant<std::vector<FillQuery>, std::vector<ChoiceQuery>,
                               std::vector<PathQuery>>;

/// Run parameters echoed into every artifact (seed, counts, flags, ...).
using Parameters = std::map<std::string, std::string>;

/// One query file: all queries share a type and a movie.
struct QueryDocument {
  std::string movie;
  Parameters parameters;
  QueryList queries;

  QueryType type() const { return static_cast<QueryType>(queries.index()); }
  std::size_t size() const;

  friend bool operator==(const QueryDocument&, const QueryDocument&) = default;
};

/// Copy with every answer key removed.
QueryDocument strip_keys(QueryDocument document);

}  // namespace hlvu
