#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hlvu/graph.hpp"
#include "hlvu/oracle.hpp"
#include "hlvu/ontology.hpp"

namespace hlvu::testing {

std::string data_path(const std::string& name);
std::string read_text(const std::string& path);

RelationOntology table2_ontology();
RelationOntology simpsons_ontology();
/// The Simpsons mini-world, read from the TGF fixture.
KnowledgeGraph simpsons_graph();

NodeId person(const std::string& name);
NodeId entity(const std::string& name);
NodeId location(const std::string& name);
RelationLabel rel(const std::string& label);
Variable var(const std::string& name, std::optional<NodeCategory> category = std::nullopt);

/// A small ontology of random labels, mixing symmetric and paired relations.
RelationOntology random_ontology(std::mt19937_64& rng, std::size_t pairs);

/// Random graph with up to max_nodes nodes. Names include spaces, quotes,
/// backslashes and colons so that serializers see awkward input.
KnowledgeGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes,
                            std::size_t max_edges,
                            const RelationOntology& ontology);

/// One to three triples, mostly copied from stored edges so that patterns
/// usually have solutions, with one to three of their nodes hidden.
std::vector<PatternTriple> random_pattern(std::mt19937_64& rng,
                                          const KnowledgeGraph& graph);

/// Naive reference solver: every |V|^k assignment of graph nodes to the
/// pattern's variables, filtered by category, injectivity and the triples.
/// Edge lookups go straight to the stored edge set.
std::set<Binding> naive_solve(const KnowledgeGraph& graph,
                              const std::vector<PatternTriple>& triples);

/// Reference path enumerator: breadth-first expansion of partial paths over
/// a label matrix built from the stored edges.
std::set<Path> matrix_paths(const KnowledgeGraph& graph, const NodeId& source,
                            const NodeId& target, std::size_t max_edges);

}  // namespace hlvu::testing
