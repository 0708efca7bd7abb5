#include "hlvu/stats.hpp"

#include <algorithm>
#include <set>
#include <vector>

namespace hlvu {

GraphStats compute_stats(const KnowledgeGraph& graph) {
  GraphStats stats;
  stats.nodes = graph.node_count();
  stats.edges = graph.edge_count();
  for (const NodeId& id : graph.nodes())
    ++stats.nodes_by_category[std::string(id.category_name())];
  for (const Edge& e : graph.edges()) ++stats.edges_by_relation[e.relation.str()];

  std::set<NodeId> seen;
  for (const NodeId& start : graph.nodes()) {
    if (seen.contains(start)) continue;
    std::size_t size = 0;
    std::vector<NodeId> stack{start};
    seen.insert(start);
    while (!stack.empty()) {
      NodeId current = stack.back();
      stack.pop_back();
      ++size;
      for (const TraversalStep& step : graph.neighbors(current))
        if (seen.insert(step.other).second) stack.push_back(step.other);
    }
    ++stats.components;
    stats.largest_component = std::max(stats.largest_component, size);
    if (size == 1) ++stats.isolated_nodes;
  }
  return stats;
}

std::string format_stats(const GraphStats& stats) {
  std::string out;
  auto line = [&out](const std::string& key, std::size_t value) {
    out += key + ": " + std::to_string(value) + "\n";
  };
  line("nodes", stats.nodes);
  for (const auto& [category, n] : stats.nodes_by_category) line("nodes." + category, n);
  line("edges", stats.edges);
  for (const auto& [relation, n] : stats.edges_by_relation) line("edges." + relation, n);
  line("components", stats.components);
  line("largest_component", stats.largest_component);
  line("isolated_nodes", stats.isolated_nodes);
  return out;
}

}  // namespace hlvu
