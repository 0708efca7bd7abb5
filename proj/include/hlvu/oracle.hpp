#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "hlvu/graph.hpp"

namespace hlvu {

/// A named unknown in a fill pattern. When a category is given, only nodes of
/// that category may be bound to it.
struct Variable {
  std::string name;
  std::optional<NodeCategory> category;

  friend bool operator==(const Variable&, const Variable&) = default;
};

using NodeRef = std::variant<NodeId, Variable>;

struct PatternTriple {
  NodeRef subject;
  RelationLabel relation;
  NodeRef object;

  friend bool operator==(const PatternTriple&, const PatternTriple&) = default;
};

/// Variable name -> bound node.
using Binding = std::map<std::string, NodeId>;

/// Alternating node/relation sequence: nodes[i] -relations[i]-> nodes[i+1].
struct Path {
  std::vector<NodeId> nodes;
  std::vector<RelationLabel> relations;

  std::size_t edge_count() const noexcept { return relations.size(); }
  const NodeId& source() const { return nodes.front(); }
  const NodeId& target() const { return nodes.back(); }

  friend auto operator<=>(const Path&, const Path&) = default;
};

/// Variables of a pattern in order of first appearance. Throws QueryError
/// when one name is used with two different categories.
std::vector<Variable> pattern_variables(std::span<const PatternTriple> triples);

/// Every injective binding under which each triple is a traversal-view edge.
/// Variables never bind to constants of the same pattern. Throws QueryError
/// for an empty pattern, unknown constants, or unknown relations.
std::set<Binding> solve_pattern(const KnowledgeGraph& graph,
                                std::span<const PatternTriple> triples);

/// All simple paths from source to target over the traversal view, with at
/// most max_edges edges when a bound is given. Results are in depth-first
/// order over sorted neighbors, so the order is deterministic.
std::vector<Path> enumerate_paths(const KnowledgeGraph& graph,
                                  const NodeId& source, const NodeId& target,
                                  std::optional<std::size_t> max_edges);

/// Indices of the options r for which (subject, r, object) holds.
std::vector<std::size_t> answer_choice(const KnowledgeGraph& graph,
                                       const NodeId& subject,
                                       const NodeId& object,
                                       std::span<const RelationLabel> options);

}  // namespace hlvu
