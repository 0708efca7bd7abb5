#include "support.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "hlvu/error.hpp"
#include "hlvu/parsers.hpp"

namespace hlvu::testing {

std::string data_path(const std::string& name) {
  return std::string(HLVU_DATA_DIR) + "/" + name;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RelationOntology table2_ontology() {
  return load_ontology(read_text(data_path("table2.ont")));
}

RelationOntology simpsons_ontology() {
  return load_ontology(read_text(data_path("simpsons.ont")));
}

KnowledgeGraph simpsons_graph() {
  auto result = parse_tgf(read_text(data_path("simpsons.tgf")), simpsons_ontology());
  if (!result.ok()) throw std::runtime_error("Simpsons fixture does not parse");
  return std::move(*result.graph);
}

NodeId person(const std::string& name) { return NodeId(NodeCategory::person(), name); }
NodeId entity(const std::string& name) { return NodeId(NodeCategory::entity(), name); }
NodeId location(const std::string& name) { return NodeId(NodeCategory::location(), name); }
RelationLabel rel(const std::string& label) { return RelationLabel(label); }

Variable var(const std::string& name, std::optional<NodeCategory> category) {
  return Variable{name, std::move(category)};
}

namespace {

std::string random_word(std::mt19937_64& rng, const std::string& alphabet,
                        std::size_t min_len, std::size_t max_len) {
  std::uniform_int_distribution<std::size_t> len(min_len, max_len);
  std::uniform_int_distribution<std::size_t> ch(0, alphabet.size() - 1);
  std::string out;
  for (std::size_t n = len(rng); out.size() < n;) out.push_back(alphabet[ch(rng)]);
  return out;
}

}  // namespace

RelationOntology random_ontology(std::mt19937_64& rng, std::size_t pairs) {
  RelationOntology ontology;
  std::bernoulli_distribution symmetric(0.3);
  while (ontology.size() < pairs * 2) {
    std::size_t before = ontology.size();
    RelationLabel r(random_word(rng, "abcdefgh", 2, 5) + " of");
    if (ontology.contains(r)) continue;
    if (symmetric(rng)) {
      ontology = ontology.extended(r, r);
    } else {
      RelationLabel inv(random_word(rng, "ABCDEFGH", 2, 5) + " by");
      if (ontology.contains(inv)) continue;
      ontology = ontology.extended(r, inv);
    }
    if (ontology.size() == before) break;
  }
  return ontology;
}

KnowledgeGraph random_graph(std::mt19937_64& rng, std::size_t max_nodes,
                            std::size_t max_edges, const RelationOntology& ontology) {
  KnowledgeGraph graph(ontology);
  static const std::vector<NodeCategory> categories = {
      NodeCategory::person(), NodeCategory::person(), NodeCategory::entity(),
      NodeCategory::location(), NodeCategory::other("Vehicle")};
  std::uniform_int_distribution<std::size_t> n_nodes(1, max_nodes);
  std::uniform_int_distribution<std::size_t> pick_cat(0, categories.size() - 1);
  std::size_t target = n_nodes(rng);
  for (std::size_t attempts = 0; graph.node_count() < target && attempts < 10 * target;
       ++attempts) {
    std::string name = random_word(rng, "abcXYZ \"\\:.'&<", 1, 8);
    if (name.find_first_not_of(" ") == std::string::npos) continue;
    try {
      graph.add_node(NodeId(categories[pick_cat(rng)], name));
    } catch (const GraphError&) {
    }
  }
  std::vector<NodeId> nodes = graph.nodes();
  std::vector<RelationLabel> relations = ontology.relations();
  if (nodes.size() < 2 || relations.empty()) return graph;
  std::uniform_int_distribution<std::size_t> pick_node(0, nodes.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_rel(0, relations.size() - 1);
  std::uniform_int_distribution<std::size_t> n_edges(0, max_edges);
  std::size_t edges = n_edges(rng);
  for (std::size_t i = 0; i < edges * 3 && graph.edge_count() < edges; ++i) {
    const NodeId& a = nodes[pick_node(rng)];
    const NodeId& b = nodes[pick_node(rng)];
    if (a == b) continue;
    try {
      graph.add_edge(Edge{a, relations[pick_rel(rng)], b});
    } catch (const DuplicateEdgeError&) {
    }
  }
  return graph;
}

namespace {

bool stored_or_inverse(const KnowledgeGraph& g, const NodeId& a, const RelationLabel& r,
                       const NodeId& b) {
  const auto& edges = g.edges();
  return edges.contains(Edge{a, r, b}) ||
         edges.contains(Edge{b, g.ontology().inverse_of(r), a});
}

}  // namespace

std::set<Binding> naive_solve(const KnowledgeGraph& graph,
                              const std::vector<PatternTriple>& triples) {
  std::vector<Variable> vars;
  std::set<NodeId> constants;
  for (const PatternTriple& t : triples)
    for (const NodeRef* ref : {&t.subject, &t.object}) {
      if (const Variable* v = std::get_if<Variable>(ref)) {
        bool seen = false;
        for (const Variable& w : vars) seen = seen || w.name == v->name;
        if (!seen) vars.push_back(*v);
      } else {
        constants.insert(std::get<NodeId>(*ref));
      }
    }

  const std::vector<NodeId> nodes = graph.nodes();
  std::set<Binding> out;
  std::vector<std::size_t> tuple(vars.size(), 0);
  const std::size_t k = vars.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= nodes.size();
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    Binding b;
    std::set<NodeId> used;
    bool ok = true;
    for (std::size_t i = 0; i < k && ok; ++i) {
      const NodeId& n = nodes[c % nodes.size()];
      c /= nodes.size();
      if (vars[i].category && vars[i].category->name() != n.category_name()) ok = false;
      if (constants.contains(n) || !used.insert(n).second) ok = false;
      b.emplace(vars[i].name, n);
    }
    if (!ok) continue;
    auto resolve = [&](const NodeRef& ref) {
      if (const Variable* v = std::get_if<Variable>(&ref)) return b.at(v->name);
      return std::get<NodeId>(ref);
    };
    for (const PatternTriple& t : triples)
      ok = ok && stored_or_inverse(graph, resolve(t.subject), t.relation, resolve(t.object));
    if (ok) out.insert(b);
  }
  return out;
}

std::set<Path> matrix_paths(const KnowledgeGraph& graph, const NodeId& source,
                            const NodeId& target, std::size_t max_edges) {
  const std::vector<NodeId> nodes = graph.nodes();
  std::map<NodeId, std::size_t> index;
  for (std::size_t i = 0; i < nodes.size(); ++i) index.emplace(nodes[i], i);
  const std::size_t n = nodes.size();
  std::vector<std::set<RelationLabel>> labels(n * n);
  for (const Edge& e : graph.edges()) {
    std::size_t a = index.at(e.src), b = index.at(e.dst);
    labels[a * n + b].insert(e.relation);
    labels[b * n + a].insert(graph.ontology().inverse_of(e.relation));
  }

  std::set<Path> out;
  std::deque<Path> queue;
  queue.push_back(Path{{source}, {}});
  while (!queue.empty()) {
    Path p = std::move(queue.front());
    queue.pop_front();
    if (p.nodes.back() == target) {
      out.insert(p);
      continue;
    }
    if (p.relations.size() == max_edges) continue;
    std::size_t from = index.at(p.nodes.back());
    for (std::size_t to = 0; to < n; ++to) {
      bool visited = false;
      for (const NodeId& seen : p.nodes) visited = visited || seen == nodes[to];
      if (visited) continue;
      for (const RelationLabel& r : labels[from * n + to]) {
        Path next = p;
        next.nodes.push_back(nodes[to]);
        next.relations.push_back(r);
        queue.push_back(std::move(next));
      }
    }
  }
  return out;
}

std::vector<PatternTriple> random_pattern(std::mt19937_64& rng, const KnowledgeGraph& graph) {
  const KnowledgeGraph& g = graph;
  std::vector<Edge> edges(g.edges().begin(), g.edges().end());
  std::vector<NodeId> nodes = g.nodes();
  std::vector<RelationLabel> relations = g.ontology().relations();
  std::size_t n_triples = 1 + rng() % 3;
  std::vector<std::tuple<NodeId, RelationLabel, NodeId>> raw;
  for (std::size_t i = 0; i < n_triples; ++i) {
    if (!edges.empty() && rng() % 4 != 0) {
      const Edge& e = edges[rng() % edges.size()];
      raw.emplace_back(e.src, e.relation, e.dst);
    } else {
      raw.emplace_back(nodes[rng() % nodes.size()], relations[rng() % relations.size()],
                       nodes[rng() % nodes.size()]);
    }
  }
  std::vector<NodeId> touched;
  for (const auto& [a, r, b] : raw)
    for (const NodeId* n : {&a, &b})
      if (std::find(touched.begin(), touched.end(), *n) == touched.end()) touched.push_back(*n);
  std::shuffle(touched.begin(), touched.end(), rng);
  std::size_t k = 1 + rng() % std::min<std::size_t>(3, touched.size());
  std::map<NodeId, Variable> hidden;
  for (std::size_t i = 0; i < k; ++i) {
    std::optional<NodeCategory> category;
    if (rng() % 2) category = touched[i].category();
    hidden.emplace(touched[i], Variable{"V" + std::to_string(i), category});
  }
  auto ref = [&](const NodeId& n) -> NodeRef {
    auto it = hidden.find(n);
    if (it == hidden.end()) return n;
    return it->second;
  };
  std::vector<PatternTriple> out;
  for (const auto& [a, r, b] : raw) out.push_back({ref(a), r, ref(b)});
  return out;
}

}  // namespace hlvu::testing
