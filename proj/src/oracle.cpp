#include "hlvu/oracle.hpp"

#include <algorithm>

#include "hlvu/error.hpp"

namespace hlvu {

namespace {

const Variable* as_variable(const NodeRef& ref) {
  return std::get_if<Variable>(&ref);
}

void require_node(const KnowledgeGraph& graph, const NodeId& id) {
  if (!graph.has_node(id)) throw QueryError("unknown node: " + id.str());
}

bool category_matches(const Variable& var, const NodeId& node) {
  return !var.category || var.category->name() == node.category_name();
}

// Backtracking matcher. Variables are assigned in first-appearance order;
// a variable linked by some triple to an already known node draws its
// candidates from that node's neighbors, otherwise from every node.
class PatternSolver {
 public:
  PatternSolver(const KnowledgeGraph& graph,
                std::span<const PatternTriple> triples)
      : graph_(graph), triples_(triples), variables_(pattern_variables(triples)) {
    for (const PatternTriple& t : triples_) {
      for (const NodeRef* ref : {&t.subject, &t.object})
        if (const NodeId* id = std::get_if<NodeId>(ref)) {
          require_node(graph_, *id);
          constants_.insert(*id);
        }
      if (!graph_.ontology().contains(t.relation))
        throw QueryError("unknown relation: " + t.relation.str());
    }
  }

  std::set<Binding> solve() {
    for (const PatternTriple& t : triples_)
      if (!as_variable(t.subject) && !as_variable(t.object) &&
          !graph_.has_link(std::get<NodeId>(t.subject), t.relation,
                           std::get<NodeId>(t.object)))
        return {};
    assign(0);
    return std::move(solutions_);
  }

 private:
  const NodeId* resolve(const NodeRef& ref) const {
    if (const Variable* v = as_variable(ref)) {
      auto it = binding_.find(v->name);
      return it == binding_.end() ? nullptr : &it->second;
    }
    return &std::get<NodeId>(ref);
  }

  std::vector<NodeId> candidates(const Variable& var) const {
    const RelationLabel* via = nullptr;
    const NodeId* anchor = nullptr;
    bool var_is_object = false;
    for (const PatternTriple& t : triples_) {
      const Variable* s = as_variable(t.subject);
      const Variable* o = as_variable(t.object);
      if (o && o->name == var.name && (!s || s->name != var.name)) {
        if (const NodeId* known = resolve(t.subject)) {
          anchor = known, via = &t.relation, var_is_object = true;
          break;
        }
      }
      if (s && s->name == var.name && (!o || o->name != var.name)) {
        if (const NodeId* known = resolve(t.object)) {
          anchor = known, via = &t.relation, var_is_object = false;
          break;
        }
      }
    }
    std::vector<NodeId> out;
    if (!anchor) {
      out = graph_.nodes();
      return out;
    }
    // For (anchor, r, var) follow r from anchor; for (var, r, anchor) follow
    // inverse(r) from anchor.
    const RelationLabel& label =
        var_is_object ? *via : graph_.ontology().inverse_of(*via);
    for (const TraversalStep& step : graph_.neighbors(*anchor))
      if (step.relation == label) out.push_back(step.other);
    return out;
  }

  bool consistent() const {
    for (const PatternTriple& t : triples_) {
      const NodeId* s = resolve(t.subject);
      const NodeId* o = resolve(t.object);
      if (s && o && !graph_.has_link(*s, t.relation, *o)) return false;
    }
    return true;
  }

  void assign(std::size_t index) {
    if (index == variables_.size()) {
      solutions_.insert(binding_);
      return;
    }
    const Variable& var = variables_[index];
    for (const NodeId& node : candidates(var)) {
      if (!category_matches(var, node) || constants_.contains(node) ||
          used_.contains(node))
        continue;
      binding_.emplace(var.name, node);
      used_.insert(node);
      if (consistent()) assign(index + 1);
      used_.erase(node);
      binding_.erase(var.name);
    }
  }

  const KnowledgeGraph& graph_;
  std::span<const PatternTriple> triples_;
  std::vector<Variable> variables_;
  std::set<NodeId> constants_;
  std::set<NodeId> used_;
  Binding binding_;
  std::set<Binding> solutions_;
};

}  // namespace

std::vector<Variable> pattern_variables(std::span<const PatternTriple> triples) {
  std::vector<Variable> out;
  for (const PatternTriple& t : triples) {
    for (const NodeRef* ref : {&t.subject, &t.object}) {
      const Variable* v = as_variable(*ref);
      if (!v) continue;
      auto it = std::find_if(out.begin(), out.end(), [&](const Variable& seen) {
        return seen.name == v->name;
      });
      if (it == out.end()) {
        out.push_back(*v);
      } else if (it->category != v->category) {
        throw QueryError("variable " + v->name +
                         " is used with two different categories");
      }
    }
  }
  return out;
}

std::set<Binding> solve_pattern(const KnowledgeGraph& graph,
                                std::span<const PatternTriple> triples) {
  if (triples.empty()) throw QueryError("pattern has no triples");
  return PatternSolver(graph, triples).solve();
}

namespace {

void extend_paths(const KnowledgeGraph& graph, const NodeId& target,
                  std::optional<std::size_t> max_edges, Path& current,
                  std::set<NodeId>& visited, std::vector<Path>& out) {
  if (max_edges && current.edge_count() >= *max_edges) return;
  for (const TraversalStep& step : graph.neighbors(current.nodes.back())) {
    if (visited.contains(step.other)) continue;
    current.nodes.push_back(step.other);
    current.relations.push_back(step.relation);
    if (step.other == target) {
      out.push_back(current);
    } else {
      visited.insert(step.other);
      extend_paths(graph, target, max_edges, current, visited, out);
      visited.erase(step.other);
    }
    current.nodes.pop_back();
    current.relations.pop_back();
  }
}

}  // namespace

std::vector<Path> enumerate_paths(const KnowledgeGraph& graph,
                                  const NodeId& source, const NodeId& target,
                                  std::optional<std::size_t> max_edges) {
  require_node(graph, source);
  require_node(graph, target);
  if (source == target)
    throw QueryError("path source and target are the same node: " + source.str());
  std::vector<Path> out;
  Path current;
  current.nodes.push_back(source);
  std::set<NodeId> visited{source};
  extend_paths(graph, target, max_edges, current, visited, out);
  return out;
}

std::vector<std::size_t> answer_choice(const KnowledgeGraph& graph,
                                       const NodeId& subject,
                                       const NodeId& object,
                                       std::span<const RelationLabel> options) {
  require_node(graph, subject);
  require_node(graph, object);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < options.size(); ++i)
    if (graph.has_link(subject, options[i], object)) out.push_back(i);
  return out;
}

}  // namespace hlvu
