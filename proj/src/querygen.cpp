#include "hlvu/querygen.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "hlvu/error.hpp"
#include "hlvu/oracle.hpp"
#include "hlvu/rng.hpp"

namespace hlvu {

char type_letter(QueryType type) {
  switch (type) {
    case QueryType::fill:
      return 'A';
    case QueryType::choice:
      return 'B';
    case QueryType::path:
      return 'C';
  }
  return '?';
}

std::size_t QueryDocument::size() const {
  return std::visit([](const auto& list) { return list.size(); }, queries);
}

QueryDocument strip_keys(QueryDocument document) {
  std::visit(
      [](auto& list) {
        for (auto& q : list) q.key = {};
      },
      document.queries);
  return document;
}

namespace {

std::string query_id(std::size_t index) {
  return "Q.Id." + std::to_string(index + 1);
}

std::string variable_name(std::size_t index) {
  return "Unknown_" + std::to_string(index + 1);
}

template <typename T>
const T& pick(SplitMix64& rng, const std::vector<T>& items) {
  return items[static_cast<std::size_t>(rng.below(items.size()))];
}

[[noreturn]] void exhausted(char type, std::size_t produced, std::size_t wanted,
                            const std::string& detail) {
  throw GenerationError("insufficient structure: generated " +
                        std::to_string(produced) + " of " +
                        std::to_string(wanted) + " type " + type +
                        " queries within " +
                        std::to_string(kMaxAttemptsPerQuery) +
                        " attempts (" + detail + ")");
}

}  // namespace

std::vector<FillQuery> generate_fill(const KnowledgeGraph& graph,
                                     std::uint64_t seed,
                                     const FillParams& params) {
  if (params.vars_per_query < 1 || params.vars_per_query > 3)
    throw GenerationError("vars_per_query must be in 1..3");
  if (params.triples_per_query < 1 || params.triples_per_query > 6)
    throw GenerationError("triples_per_query must be in 1..6");
  if (graph.node_count() < 3 || graph.edge_count() < 2)
    throw GenerationError(
        "insufficient structure: fill queries need at least 3 nodes and 2 edges");

  const std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  SplitMix64 rng(seed);
  std::vector<FillQuery> out;
  std::set<std::pair<std::set<Edge>, std::set<NodeId>>> seen;

  while (out.size() < params.count) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kMaxAttemptsPerQuery && !accepted;
         ++attempt) {
      // Grow a connected edge set from a random seed edge.
      std::vector<Edge> picked{pick(rng, edges)};
      std::set<NodeId> touched{picked[0].src, picked[0].dst};
      while (picked.size() < params.triples_per_query) {
        std::vector<Edge> frontier;
        for (const Edge& e : edges)
          if ((touched.contains(e.src) || touched.contains(e.dst)) &&
              std::find(picked.begin(), picked.end(), e) == picked.end())
            frontier.push_back(e);
        if (frontier.empty()) break;
        const Edge& next = pick(rng, frontier);
        picked.push_back(next);
        touched.insert(next.src);
        touched.insert(next.dst);
      }
      if (picked.size() < params.triples_per_query) continue;
      if (touched.size() <= params.vars_per_query) continue;

      std::vector<NodeId> nodes(touched.begin(), touched.end());
      rng.shuffle(std::span<NodeId>(nodes));
      std::set<NodeId> hidden(nodes.begin(),
                              nodes.begin() + static_cast<std::ptrdiff_t>(
                                                  params.vars_per_query));

      auto key_form = std::make_pair(std::set<Edge>(picked.begin(), picked.end()),
                                     hidden);
      if (seen.contains(key_form)) continue;

      std::map<NodeId, Variable> variables;
      auto ref = [&](const NodeId& node) -> NodeRef {
        if (!hidden.contains(node)) return node;
        auto it = variables.find(node);
        if (it == variables.end())
          it = variables
                   .emplace(node, Variable{variable_name(variables.size()),
                                           node.category()})
                   .first;
        return it->second;
      };

      FillQuery query;
      bool every_triple_has_variable = true;
      for (const Edge& e : picked) {
        every_triple_has_variable =
            every_triple_has_variable &&
            (hidden.contains(e.src) || hidden.contains(e.dst));
        NodeRef subject = ref(e.src);
        NodeRef object = ref(e.dst);
        query.triples.push_back(PatternTriple{subject, e.relation, object});
      }
      if (!every_triple_has_variable) continue;

      std::set<Binding> key = solve_pattern(graph, query.triples);
      if (params.require_unique && key.size() != 1) continue;

      query.id = query_id(out.size());
      query.variables = pattern_variables(query.triples);
      query.key.assign(key.begin(), key.end());
      seen.insert(std::move(key_form));
      out.push_back(std::move(query));
      accepted = true;
    }
    if (!accepted)
      exhausted('A', out.size(), params.count,
                params.require_unique ? "no further distinct uniquely solvable pattern"
                                      : "no further distinct pattern");
  }
  return out;
}

std::vector<ChoiceQuery> generate_choice(const KnowledgeGraph& graph,
                                         std::uint64_t seed, std::size_t count,
                                         std::size_t n_options) {
  if (n_options < 1) throw GenerationError("n_options must be at least 1");
  if (graph.ontology().size() < n_options)
    throw GenerationError("ontology has " +
                          std::to_string(graph.ontology().size()) +
                          " relations, fewer than n_options = " +
                          std::to_string(n_options));
  if (count > 0 && graph.edge_count() == 0)
    throw GenerationError("insufficient structure: graph has no edges");

  const std::vector<Edge> edges(graph.edges().begin(), graph.edges().end());
  const std::vector<RelationLabel> vocabulary = graph.ontology().relations();
  const RelationOntology& ontology = graph.ontology();
  SplitMix64 rng(seed);
  std::vector<ChoiceQuery> out;
  std::set<Edge> used;

  while (out.size() < count) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kMaxAttemptsPerQuery && !accepted;
         ++attempt) {
      const Edge& edge = pick(rng, edges);
      if (used.contains(edge)) continue;
      bool flip = rng.coin();
      const NodeId& subject = flip ? edge.dst : edge.src;
      const NodeId& object = flip ? edge.src : edge.dst;
      const RelationLabel& answer =
          flip ? ontology.inverse_of(edge.relation) : edge.relation;

      std::vector<RelationLabel> distractors;
      for (const RelationLabel& r : vocabulary)
        if (!graph.has_link(subject, r, object) &&
            !graph.has_link(object, r, subject))
          distractors.push_back(r);
      if (distractors.size() < n_options - 1) continue;

      // Partial Fisher-Yates: the first n_options - 1 slots become a uniform
      // sample without replacement.
      for (std::size_t i = 0; i + 1 < n_options; ++i) {
        std::size_t j = i + static_cast<std::size_t>(
                                rng.below(distractors.size() - i));
        std::swap(distractors[i], distractors[j]);
      }
      std::vector<RelationLabel> options{answer};
      options.insert(options.end(), distractors.begin(),
                     distractors.begin() + static_cast<std::ptrdiff_t>(n_options - 1));
      rng.shuffle(std::span<RelationLabel>(options));
      auto correct = std::find(options.begin(), options.end(), answer);

      used.insert(edge);
      out.push_back(ChoiceQuery{query_id(out.size()), subject, object, options,
                                static_cast<std::size_t>(correct - options.begin())});
      accepted = true;
    }
    if (!accepted)
      exhausted('B', out.size(), count,
                "no further unused edge with enough non-holding distractors");
  }
  return out;
}

std::vector<PathQuery> generate_path(const KnowledgeGraph& graph,
                                     std::uint64_t seed, std::size_t count,
                                     std::size_t max_edges) {
  if (max_edges < 1) throw GenerationError("max_edges must be at least 1");
  std::vector<NodeId> persons;
  for (const NodeId& id : graph.nodes())
    if (id.category().kind() == NodeCategory::Kind::person) persons.push_back(id);
  if (count > 0 && persons.size() < 2)
    throw GenerationError("no connected Person pair: graph has " +
                          std::to_string(persons.size()) + " Person nodes");

  SplitMix64 rng(seed);
  std::vector<PathQuery> out;
  std::set<std::pair<NodeId, NodeId>> used;

  while (out.size() < count) {
    bool accepted = false;
    for (std::size_t attempt = 0; attempt < kMaxAttemptsPerQuery && !accepted;
         ++attempt) {
      std::size_t s = static_cast<std::size_t>(rng.below(persons.size()));
      std::size_t t = static_cast<std::size_t>(rng.below(persons.size() - 1));
      if (t >= s) ++t;
      const NodeId& source = persons[s];
      const NodeId& target = persons[t];
      auto pair = std::minmax(source, target);
      if (used.contains({pair.first, pair.second})) continue;

      std::vector<Path> key = enumerate_paths(graph, source, target, max_edges);
      if (key.empty()) continue;
      used.insert({pair.first, pair.second});
      out.push_back(PathQuery{query_id(out.size()), source, target, max_edges,
                              std::move(key)});
      accepted = true;
    }
    if (!accepted)
      exhausted('C', out.size(), count,
                "no further connected Person pair within " +
                    std::to_string(max_edges) + " edges");
  }
  return out;
}

}  // namespace hlvu
