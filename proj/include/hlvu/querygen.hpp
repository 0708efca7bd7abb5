#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hlvu/graph.hpp"
#include "hlvu/query.hpp"

namespace hlvu {

/// Attempts per requested query before generation gives up.
inline constexpr std::size_t kMaxAttemptsPerQuery = 1000;
inline constexpr std::size_t kDefaultMaxEdges = 8;

struct FillParams {
  std::size_t count = 5;
  std::size_t vars_per_query = 2;     // 1..3
  std::size_t triples_per_query = 4;  // 1..6
  bool require_unique = false;
};

/// Samples connected sub-patterns of the graph and replaces some of their
/// nodes with variables. Each key is the oracle's solution set; with
/// require_unique only patterns with exactly one solution are kept.
/// Throws GenerationError when the graph cannot supply `count` distinct
/// patterns.
std::vector<FillQuery> generate_fill(const KnowledgeGraph& graph,
                                     std::uint64_t seed,
                                     const FillParams& params);

/// Hides the relation of a sampled edge among n_options - 1 distractors that
/// hold in neither direction between the two nodes.
std::vector<ChoiceQuery> generate_choice(const KnowledgeGraph& graph,
                                         std::uint64_t seed, std::size_t count,
                                         std::size_t n_options);

/// Picks connected pairs of Person nodes; the key is every simple path of at
/// most max_edges edges.
std::vector<PathQuery> generate_path(const KnowledgeGraph& graph,
                                     std::uint64_t seed, std::size_t count,
                                     std::size_t max_edges = kDefaultMaxEdges);

}  // namespace hlvu
