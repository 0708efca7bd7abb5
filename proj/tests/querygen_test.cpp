#include <gtest/gtest.h>

#include <array>
#include <random>

#include "hlvu/error.hpp"
#include "hlvu/oracle.hpp"
#include "hlvu/protocol.hpp"
#include "hlvu/querygen.hpp"
#include "hlvu/rng.hpp"
#include "hlvu/scoring.hpp"
#include "support.hpp"

namespace hlvu {
namespace {

using testing::location;
using testing::person;
using testing::rel;

TEST(SplitMix64, TestVectors) {
  SplitMix64 rng(0);
  EXPECT_EQ(rng.next(), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(rng.next(), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(rng.next(), 0x06c45d188009454fULL);
}

TEST(SplitMix64, BelowStaysInRangeAndCoversIt) {
  SplitMix64 rng(5);
  std::array<int, 7> counts{};
  for (int i = 0; i < 7000; ++i) {
    auto x = rng.below(7);
    ASSERT_LT(x, 7u);
    ++counts[x];
  }
  for (int c : counts) EXPECT_GT(c, 800);
  EXPECT_EQ(rng.below(1), 0u);
}

TEST(SplitMix64, ShuffleIsPermutation) {
  SplitMix64 rng(9);
  std::vector<int> v = {1, 2, 3, 4, 5, 6, 7, 8};
  rng.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  EXPECT_EQ(sorted, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
}

FillParams unique_pairs(std::size_t count) {
  FillParams p;
  p.count = count;
  p.vars_per_query = 2;
  p.triples_per_query = 4;
  p.require_unique = true;
  return p;
}

TEST(GenerateFill, KeysMatchOracle) {
  KnowledgeGraph g = testing::simpsons_graph();
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    FillParams p;
    p.count = 5;
    p.vars_per_query = 1 + seed % 3;
    p.triples_per_query = p.vars_per_query + seed % 3;
    auto queries = generate_fill(g, seed, p);
    ASSERT_EQ(queries.size(), 5u);
    for (const FillQuery& q : queries) {
      std::set<Binding> key(q.key.begin(), q.key.end());
      EXPECT_EQ(key, solve_pattern(g, q.triples));
      EXPECT_EQ(key, testing::naive_solve(g, q.triples));
      EXPECT_FALSE(key.empty());
      EXPECT_EQ(q.variables.size(), p.vars_per_query);
      EXPECT_EQ(q.triples.size(), p.triples_per_query);
      for (const PatternTriple& t : q.triples)
        EXPECT_TRUE(std::holds_alternative<Variable>(t.subject) ||
                    std::holds_alternative<Variable>(t.object));
    }
  }
}

TEST(GenerateFill, RequireUnique) {
  KnowledgeGraph g = testing::simpsons_graph();
  auto queries = generate_fill(g, 42, unique_pairs(5));
  for (const FillQuery& q : queries) EXPECT_EQ(q.key.size(), 1u);
  EXPECT_EQ(queries[0].id, "Q.Id.1");
  EXPECT_EQ(queries[4].id, "Q.Id.5");
}

TEST(GenerateFill, WorkedExampleIsProducible) {
  KnowledgeGraph g = testing::simpsons_graph();
  const std::set<Edge> wanted = {
      {person("Homer"), rel("Spouse of"), person("Marge")},
      {person("Homer"), rel("Friend of"), person("Lenny")},
      {person("Ned Flanders"), rel("Volunteers at"), location("Church")},
      {person("Ned Flanders"), rel("Neighbor of"), person("Homer")},
  };
  std::optional<std::uint64_t> found;
  for (std::uint64_t seed = 0; seed < 5000 && !found; ++seed) {
    FillQuery q = generate_fill(g, seed, unique_pairs(1)).front();
    ASSERT_EQ(q.key.size(), 1u);
    const Binding& b = q.key.front();
    auto ground = [&](const NodeRef& r) {
      if (const Variable* v = std::get_if<Variable>(&r)) return b.at(v->name);
      return std::get<NodeId>(r);
    };
    std::set<Edge> edges;
    for (const PatternTriple& t : q.triples)
      edges.insert({ground(t.subject), t.relation, ground(t.object)});
    std::set<NodeId> hidden;
    for (const auto& [name, node] : b) hidden.insert(node);
    if (edges == wanted && hidden == std::set<NodeId>{person("Homer"), person("Ned Flanders")})
      found = seed;
  }
  ASSERT_TRUE(found.has_value());
}

TEST(GenerateFill, Deterministic) {
  KnowledgeGraph g = testing::simpsons_graph();
  QueryDocument a{"simpsons", {}, generate_fill(g, 7, unique_pairs(5))};
  QueryDocument b{"simpsons", {}, generate_fill(g, 7, unique_pairs(5))};
  EXPECT_EQ(emit_key_xml(a), emit_key_xml(b));
  QueryDocument c{"simpsons", {}, generate_fill(g, 8, unique_pairs(5))};
  EXPECT_NE(emit_key_xml(a), emit_key_xml(c));
}

TEST(GenerateFill, InsufficientStructure) {
  KnowledgeGraph g(testing::table2_ontology());
  for (const char* n : {"A", "B", "C"}) g.add_node(person(n));
  g.add_edge({person("A"), rel("Friend of"), person("B")});
  g.add_edge({person("B"), rel("Friend of"), person("C")});
  FillParams p;
  p.count = 50;
  p.vars_per_query = 1;
  p.triples_per_query = 2;
  EXPECT_THROW(generate_fill(g, 1, p), GenerationError);
  p.triples_per_query = 7;
  EXPECT_THROW(generate_fill(g, 1, p), GenerationError);
  EXPECT_THROW(generate_fill(KnowledgeGraph{}, 1, FillParams{}), GenerationError);
}

TEST(GenerateChoice, FiveOptionsOneCorrect) {
  KnowledgeGraph g = testing::simpsons_graph();
  auto queries = generate_choice(g, 42, 10, 5);
  ASSERT_EQ(queries.size(), 10u);
  std::set<std::pair<NodeId, NodeId>> pairs;
  for (const ChoiceQuery& q : queries) {
    ASSERT_EQ(q.options.size(), 5u);
    ASSERT_TRUE(q.key.has_value());
    EXPECT_EQ(answer_choice(g, q.subject, q.object, q.options),
              std::vector<std::size_t>{*q.key});
    std::set<RelationLabel> distinct(q.options.begin(), q.options.end());
    EXPECT_EQ(distinct.size(), 5u);
    for (std::size_t i = 0; i < q.options.size(); ++i)
      if (i != *q.key) {
        EXPECT_FALSE(g.has_link(q.object, q.options[i], q.subject));
      }
  }
}

TEST(GenerateChoice, SingleOption) {
  KnowledgeGraph g = testing::simpsons_graph();
  auto queries = generate_choice(g, 3, 4, 1);
  for (const ChoiceQuery& q : queries) {
    ASSERT_EQ(q.options.size(), 1u);
    EXPECT_EQ(q.key, 0u);
    EXPECT_TRUE(g.has_link(q.subject, q.options[0], q.object));
  }
}

TEST(GenerateChoice, Exhausted) {
  KnowledgeGraph g = testing::simpsons_graph();
  EXPECT_THROW(generate_choice(g, 1, 16, 5), GenerationError);
  EXPECT_EQ(generate_choice(g, 1, 15, 5).size(), 15u);
  EXPECT_THROW(generate_choice(g, 1, 1, 100), GenerationError);
  EXPECT_THROW(generate_choice(KnowledgeGraph(g.ontology()), 1, 1, 5), GenerationError);
}

TEST(GenerateChoice, CorrectIndexUniform) {
  KnowledgeGraph g = testing::simpsons_graph();
  constexpr int kSeeds = 2000;
  std::array<double, 5> counts{};
  for (std::uint64_t seed = 0; seed < kSeeds; ++seed)
    ++counts[*generate_choice(g, seed, 1, 5).front().key];
  double expected = kSeeds / 5.0, chi2 = 0;
  for (double c : counts) chi2 += (c - expected) * (c - expected) / expected;
  // 4 degrees of freedom, p = 0.001.
  EXPECT_LT(chi2, 18.467);
}

TEST(GeneratePath, ChalmersLennyKey) {
  KnowledgeGraph g = testing::simpsons_graph();
  const NodeId chalmers = person("Superintendent Chalmers"), lenny = person("Lenny");
  bool seen = false;
  for (std::uint64_t seed = 0; seed < 500 && !seen; ++seed) {
    PathQuery q = generate_path(g, seed, 1, 4).front();
    if (std::minmax(q.source, q.target) != std::minmax(chalmers, lenny)) continue;
    seen = true;
    EXPECT_EQ(q.key.size(), 3u);
    EXPECT_EQ(q.max_edges, 4u);
  }
  EXPECT_TRUE(seen);
}

TEST(GeneratePath, KeysValidAndComplete) {
  KnowledgeGraph g = testing::simpsons_graph();
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto queries = generate_path(g, seed, 4, 1 + seed % 6);
    std::set<std::pair<NodeId, NodeId>> pairs;
    for (const PathQuery& q : queries) {
      EXPECT_EQ(q.source.category(), NodeCategory::person());
      EXPECT_EQ(q.target.category(), NodeCategory::person());
      EXPECT_TRUE(pairs.insert(std::minmax(q.source, q.target)).second);
      ASSERT_FALSE(q.key.empty());
      std::set<Path> key(q.key.begin(), q.key.end());
      EXPECT_EQ(key, testing::matrix_paths(g, q.source, q.target, q.max_edges));
      for (const Path& p : q.key) EXPECT_TRUE(validate_path(g, q, p).valid);
      for (const TraversalStep& s : g.neighbors(q.source)) {
        if (s.other == q.target) {
          EXPECT_TRUE(key.contains(Path{{q.source, q.target}, {s.relation}}));
        }
      }
    }
  }
}

TEST(GeneratePath, AdjacentPair) {
  KnowledgeGraph g(testing::table2_ontology());
  g.add_node(person("Homer"));
  g.add_node(person("Marge"));
  g.add_edge({person("Homer"), rel("Spouse of"), person("Marge")});
  PathQuery q = generate_path(g, 3, 1, 8).front();
  ASSERT_EQ(q.key.size(), 1u);
  EXPECT_EQ(q.key[0].edge_count(), 1u);
  EXPECT_EQ(q.key[0].relations[0], rel("Spouse of"));
  EXPECT_THROW(generate_path(g, 3, 2, 8), GenerationError);
}

TEST(GeneratePath, Errors) {
  KnowledgeGraph g(testing::simpsons_ontology());
  g.add_node(person("Alone"));
  g.add_node(location("Church"));
  EXPECT_THROW(generate_path(g, 1, 1, 4), GenerationError);
  g.add_node(person("Also alone"));
  EXPECT_THROW(generate_path(g, 1, 1, 4), GenerationError);
  EXPECT_THROW(generate_path(testing::simpsons_graph(), 1, 1, 0), GenerationError);
}

}  // namespace
}  // namespace hlvu
