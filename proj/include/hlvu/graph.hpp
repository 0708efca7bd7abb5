#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "hlvu/ontology.hpp"

namespace hlvu {

/// Person, Entity, Location, or any other annotator-chosen category name.
class NodeCategory {
 public:
  enum class Kind { person, entity, location, other };

  static NodeCategory person() { return NodeCategory(Kind::person, "Person"); }
  static NodeCategory entity() { return NodeCategory(Kind::entity, "Entity"); }
  static NodeCategory location() {
    return NodeCategory(Kind::location, "Location");
  }
  /// Throws GraphError for an empty name or one of the three reserved names.
  static NodeCategory other(std::string_view name);
  /// Maps the reserved names to their kinds and anything else to Other.
  static NodeCategory parse(std::string_view name);

  Kind kind() const noexcept { return kind_; }
  const std::string& name() const noexcept { return name_; }

  friend bool operator==(const NodeCategory&, const NodeCategory&) = default;

 private:
  NodeCategory(Kind kind, std::string name)
      : kind_(kind), name_(std::move(name)) {}

  Kind kind_;
  std::string name_;
};

/// Identity of a graph node, rendered canonically as "<Category>:<name>".
class NodeId {
 public:
  NodeId(const NodeCategory& category, std::string_view name);

  /// Splits at the first ':'; both sides are trimmed. Throws GraphError when
  /// the category prefix or the name is missing.
  static NodeId parse(std::string_view text);
  static std::optional<NodeId> try_parse(std::string_view text);

  NodeCategory category() const;
  std::string_view category_name() const;
  std::string_view name() const;
  const std::string& str() const noexcept { return text_; }

  friend bool operator==(const NodeId& a, const NodeId& b) {
    return a.text_ == b.text_;
  }
  friend std::strong_ordering operator<=>(const NodeId& a, const NodeId& b) {
    return a.text_ <=> b.text_;
  }

 private:
  NodeId() = default;

  std::string text_;
  std::size_t split_ = 0;
};

/// True for names of the form "Unknown_<digits>", which query files use for
/// variables and which are therefore not allowed as node names.
bool is_variable_name(std::string_view name);

struct Edge {
  NodeId src;
  RelationLabel relation;
  NodeId dst;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// One hop of the traversal view: the neighbor and the label as read from
/// the node being expanded.
struct TraversalStep {
  NodeId other;
  RelationLabel relation;

  friend auto operator<=>(const TraversalStep&, const TraversalStep&) = default;
};

/// Ground-truth knowledge graph.
///
/// Each semantic link is stored once in one direction. The traversal view
/// exposes every stored edge (a, r, b) as the step (b, r) from a and the step
/// (a, inverse(r)) from b. Adding the reverse reading of a stored link is
/// rejected as a duplicate. Self-loops are not allowed.
///
/// Equality compares the ontology, node identities and stored edges; display
/// labels are carried along but do not take part.
class KnowledgeGraph {
 public:
  explicit KnowledgeGraph(RelationOntology ontology = {});

  const RelationOntology& ontology() const noexcept { return ontology_; }

  /// Returns false when the node was already present.
  bool add_node(const NodeId& id);
  void set_display_label(const NodeId& id, std::string label);
  std::optional<std::string> display_label(const NodeId& id) const;

  /// Throws GraphError for unknown endpoints, unknown relations and
  /// self-loops, DuplicateEdgeError when the link is already stored in
  /// either direction.
  void add_edge(const Edge& edge);

  /// Adds a relation pair to the graph's ontology.
  void extend_ontology(const RelationLabel& relation,
                       const RelationLabel& inverse);

  bool has_node(const NodeId& id) const { return nodes_.contains(id); }
  /// Whether (a, relation, b) is an edge of the traversal view.
  bool has_link(const NodeId& a, const RelationLabel& relation,
                const NodeId& b) const;

  /// Sorted by neighbor id then relation. Throws GraphError for unknown nodes.
  const std::vector<TraversalStep>& neighbors(const NodeId& id) const;
  std::size_t degree_by_relation(const NodeId& id,
                                 const RelationLabel& relation) const;

  std::vector<NodeId> nodes() const;
  const std::set<Edge>& edges() const noexcept { return edges_; }
  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  friend bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b);

 private:
  const std::vector<TraversalStep>& steps_of(const NodeId& id) const;

  RelationOntology ontology_;
  std::map<NodeId, std::optional<std::string>> nodes_;
  std::set<Edge> edges_;
  std::map<NodeId, std::vector<TraversalStep>> adjacency_;
};

}  // namespace hlvu
