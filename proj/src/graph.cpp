#include "hlvu/graph.hpp"

#include <algorithm>

#include "hlvu/error.hpp"

namespace hlvu {

namespace {

std::string_view trim(std::string_view text) {
  const char* ws = " \t\r\n\v\f";
  auto first = text.find_first_not_of(ws);
  if (first == std::string_view::npos) return {};
  auto last = text.find_last_not_of(ws);
  return text.substr(first, last - first + 1);
}

bool is_reserved(std::string_view name) {
  return name == "Person" || name == "Entity" || name == "Location";
}

// Node names travel on single lines in TGF and inside quoted XGML strings.
bool has_line_break(std::string_view text) {
  return text.find_first_of("\r\n") != std::string_view::npos;
}

}  // namespace

NodeCategory NodeCategory::other(std::string_view name) {
  std::string_view trimmed = trim(name);
  if (trimmed.empty()) throw GraphError("node category is empty");
  if (is_reserved(trimmed))
    throw GraphError("'" + std::string(trimmed) +
                     "' is a reserved category, not an Other category");
  if (trimmed.find(':') != std::string_view::npos || has_line_break(trimmed))
    throw GraphError("invalid category name: " + std::string(trimmed));
  return NodeCategory(Kind::other, std::string(trimmed));
}

NodeCategory NodeCategory::parse(std::string_view name) {
  std::string_view trimmed = trim(name);
  if (trimmed == "Person") return person();
  if (trimmed == "Entity") return entity();
  if (trimmed == "Location") return location();
  return other(trimmed);
}

NodeId::NodeId(const NodeCategory& category, std::string_view name) {
  std::string_view trimmed = trim(name);
  if (trimmed.empty()) throw GraphError("node name is empty");
  if (has_line_break(trimmed))
    throw GraphError("node name contains a line break");
  text_ = category.name();
  split_ = text_.size();
  text_.push_back(':');
  text_.append(trimmed);
}

NodeId NodeId::parse(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos)
    throw GraphError("node label '" + std::string(text) +
                     "' has no '<Category>:' prefix");
  return NodeId(NodeCategory::parse(text.substr(0, colon)),
                text.substr(colon + 1));
}

std::optional<NodeId> NodeId::try_parse(std::string_view text) {
  try {
    return parse(text);
  } catch (const GraphError&) {
    return std::nullopt;
  }
}

NodeCategory NodeId::category() const {
  return NodeCategory::parse(category_name());
}

std::string_view NodeId::category_name() const {
  return std::string_view(text_).substr(0, split_);
}

std::string_view NodeId::name() const {
  return std::string_view(text_).substr(split_ + 1);
}

bool is_variable_name(std::string_view name) {
  constexpr std::string_view prefix = "Unknown_";
  if (!name.starts_with(prefix) || name.size() == prefix.size()) return false;
  return std::all_of(name.begin() + prefix.size(), name.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

KnowledgeGraph::KnowledgeGraph(RelationOntology ontology)
    : ontology_(std::move(ontology)) {}

bool KnowledgeGraph::add_node(const NodeId& id) {
  if (is_variable_name(id.name()))
    throw GraphError("node name '" + std::string(id.name()) +
                     "' is reserved for query variables");
  auto [it, inserted] = nodes_.try_emplace(id);
  if (inserted) adjacency_.try_emplace(id);
  return inserted;
}

void KnowledgeGraph::set_display_label(const NodeId& id, std::string label) {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw GraphError("unknown node: " + id.str());
  it->second = std::move(label);
}

std::optional<std::string> KnowledgeGraph::display_label(
    const NodeId& id) const {
  auto it = nodes_.find(id);
  if (it == nodes_.end()) throw GraphError("unknown node: " + id.str());
  return it->second;
}

void KnowledgeGraph::add_edge(const Edge& edge) {
  if (!has_node(edge.src)) throw GraphError("unknown node: " + edge.src.str());
  if (!has_node(edge.dst)) throw GraphError("unknown node: " + edge.dst.str());
  if (!ontology_.contains(edge.relation))
    throw GraphError("unknown relation: " + edge.relation.str());
  if (edge.src == edge.dst)
    throw GraphError("self-loop on " + edge.src.str() + " is not allowed");
  if (edges_.contains(edge))
    throw DuplicateEdgeError("duplicate edge " + edge.src.str() + " -[" +
                             edge.relation.str() + "]-> " + edge.dst.str());
  const RelationLabel& inverse = ontology_.inverse_of(edge.relation);
  if (edges_.contains(Edge{edge.dst, inverse, edge.src}))
    throw DuplicateEdgeError("edge " + edge.src.str() + " -[" +
                             edge.relation.str() + "]-> " + edge.dst.str() +
                             " duplicates the stored inverse " +
                             edge.dst.str() + " -[" + inverse.str() + "]-> " +
                             edge.src.str());

  edges_.insert(edge);
  auto insert_sorted = [](std::vector<TraversalStep>& steps,
                          TraversalStep step) {
    steps.insert(std::lower_bound(steps.begin(), steps.end(), step),
                 std::move(step));
  };
  insert_sorted(adjacency_.at(edge.src), TraversalStep{edge.dst, edge.relation});
  insert_sorted(adjacency_.at(edge.dst), TraversalStep{edge.src, inverse});
}

void KnowledgeGraph::extend_ontology(const RelationLabel& relation,
                                     const RelationLabel& inverse) {
  ontology_ = ontology_.extended(relation, inverse);
}

bool KnowledgeGraph::has_link(const NodeId& a, const RelationLabel& relation,
                              const NodeId& b) const {
  if (!ontology_.contains(relation)) return false;
  return edges_.contains(Edge{a, relation, b}) ||
         edges_.contains(Edge{b, ontology_.inverse_of(relation), a});
}

const std::vector<TraversalStep>& KnowledgeGraph::steps_of(
    const NodeId& id) const {
  auto it = adjacency_.find(id);
  if (it == adjacency_.end()) throw GraphError("unknown node: " + id.str());
  return it->second;
}

const std::vector<TraversalStep>& KnowledgeGraph::neighbors(
    const NodeId& id) const {
  return steps_of(id);
}

std::size_t KnowledgeGraph::degree_by_relation(
    const NodeId& id, const RelationLabel& relation) const {
  const auto& steps = steps_of(id);
  if (!ontology_.contains(relation))
    throw GraphError("unknown relation: " + relation.str());
  return static_cast<std::size_t>(
      std::count_if(steps.begin(), steps.end(), [&](const TraversalStep& s) {
        return s.relation == relation;
      }));
}

std::vector<NodeId> KnowledgeGraph::nodes() const {
  std::vector<NodeId> out;
  out.reserve(nodes_.size());
  for (const auto& [id, label] : nodes_) out.push_back(id);
  return out;
}

bool operator==(const KnowledgeGraph& a, const KnowledgeGraph& b) {
  if (a.ontology_ != b.ontology_ || a.edges_ != b.edges_ ||
      a.nodes_.size() != b.nodes_.size())
    return false;
  return std::equal(a.nodes_.begin(), a.nodes_.end(), b.nodes_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first; });
}

}  // namespace hlvu
