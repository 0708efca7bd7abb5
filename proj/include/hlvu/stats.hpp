#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "hlvu/graph.hpp"

namespace hlvu {

struct GraphStats {
  std::size_t nodes = 0;
  std::size_t edges = 0;
  std::map<std::string, std::size_t> nodes_by_category;
  std::map<std::string, std::size_t> edges_by_relation;  // stored direction
  std::size_t components = 0;  // over the traversal view
  std::size_t largest_component = 0;
  std::size_t isolated_nodes = 0;
};

GraphStats compute_stats(const KnowledgeGraph& graph);

/// One "key: value" line per figure, in a fixed order.
std::string format_stats(const GraphStats& stats);

}  // namespace hlvu
