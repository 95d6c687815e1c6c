#include <gtest/gtest.h>

#include "irreg/error.hpp"
#include "irreg/generators.hpp"
#include "irreg/graph.hpp"
#include "irreg/graph_io.hpp"
#include "test_support.hpp"

namespace irreg {
namespace {

using testing::make_graph;

TEST(DegreeProfile, FullCycleHasOneDegree) {
  const Graph c4 = cycle_graph(4);
  const DegreeProfile p = degree_profile(SpanningSubgraph::full(c4));
  EXPECT_EQ(p.count(2), 4);
  EXPECT_EQ(p.max_multiplicity, 4);
}

TEST(DegreeProfile, EmptySubgraphOfK4) {
  const Graph k4 = complete_graph(4);
  const DegreeProfile p = degree_profile(SpanningSubgraph(k4));
  EXPECT_EQ(p.count(0), 4);
  EXPECT_EQ(p.max_multiplicity, 4);
}

TEST(DegreeProfile, OneEdgeOfC4) {
  const Graph c4 = cycle_graph(4);
  const std::vector<EdgeId> one{0};
  const DegreeProfile p = degree_profile(SpanningSubgraph::from_edges(c4, one));
  EXPECT_EQ(p.count(0), 2);
  EXPECT_EQ(p.count(1), 2);
  EXPECT_EQ(p.max_multiplicity, 2);
  EXPECT_EQ(testing::naive_min_m(c4), 2);
}

TEST(DegreeProfile, CsvFormat) {
  const Graph p3 = path_graph(3);
  EXPECT_EQ(profile_csv(degree_profile(SpanningSubgraph::full(p3))), "k,count\n1,2\n2,1\n# m(H)=2\n");
}

TEST(SpanningSubgraph, ToggleKeepsDegreesInSync) {
  const Graph k4 = complete_graph(4);
  SpanningSubgraph h(k4);
  h.toggle(0);
  h.toggle(3);
  h.toggle(0);
  EXPECT_TRUE(h.consistent());
  EXPECT_EQ(h.edge_count(), 1);
}

TEST(Graph, RejectsLoopsAndDuplicates) {
  EXPECT_THROW(make_graph(2, {{0, 0}}), PreconditionError);
  EXPECT_THROW(make_graph(2, {{0, 1}, {1, 0}}), PreconditionError);
  EXPECT_THROW(make_graph(2, {{0, 2}}), PreconditionError);
}

TEST(Generators, RegularK4IsUnique) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Graph g = random_regular(4, 3, seed);
    EXPECT_EQ(canonical_edge_order(g), canonical_edge_order(complete_graph(4)));
  }
}

TEST(Generators, TwoRegularIsCycleUnion) {
  const Graph g = random_regular(8, 2, 11);
  EXPECT_TRUE(g.is_regular());
  EXPECT_EQ(g.max_degree(), 2);
  EXPECT_EQ(g.edge_count(), 8);
}

TEST(Generators, OddHandshakeRejected) { EXPECT_THROW(random_regular(7, 3, 1), PreconditionError); }

TEST(Generators, RegularIsDeterministicAndSimple) {
  const Graph a = random_regular(200, 10, 42);
  const Graph b = random_regular(200, 10, 42);
  EXPECT_EQ(a, b);
  EXPECT_TRUE(a.is_regular());
  EXPECT_EQ(a.max_degree(), 10);
}

TEST(Generators, MinDegreeTopUp) {
  const Graph g = random_min_degree(300, 20, 0.03, 5);
  EXPECT_GE(g.min_degree(), 20);
}

TEST(Generators, CycleUnionOfTwoC4) {
  const Graph g = cycle_union(8, 4);
  EXPECT_EQ(g.vertex_count(), 8);
  EXPECT_EQ(g.edge_count(), 8);
  EXPECT_TRUE(g.is_regular());
  EXPECT_EQ(g, disjoint_union(cycle_graph(4), cycle_graph(4)));
}

TEST(GraphIo, ReadsTriangle) {
  const Graph g = read_graph("3 3\n0 1\n0 2\n1 2");
  EXPECT_EQ(canonical_edge_order(g), canonical_edge_order(complete_graph(3)));
}

TEST(GraphIo, RoundTrip) {
  const std::string text = "5 4\n0 1\n0 4\n1 2\n3 4\n";
  EXPECT_EQ(write_graph(read_graph(text)), text);
}

TEST(GraphIo, RejectsLoop) { EXPECT_THROW(read_graph("2 1\n0 0"), ParseError); }

TEST(GraphIo, RejectsBadCounts) {
  EXPECT_THROW(read_graph("3 2\n0 1\n"), ParseError);
  EXPECT_THROW(read_graph("x 1\n0 1\n"), ParseError);
}

TEST(GraphIo, SubgraphRoundTrip) {
  const Graph c5 = cycle_graph(5);
  const std::vector<EdgeId> ids{1, 3};
  const SpanningSubgraph h = SpanningSubgraph::from_edges(c5, ids);
  const SubgraphFile f = read_subgraph(write_subgraph(h, {{"algo", "test"}}));
  EXPECT_EQ(f.graph_hash, graph_hash(c5));
  EXPECT_EQ(f.edges, ids);
  ASSERT_EQ(f.annotations.size(), 1U);
  EXPECT_EQ(f.annotations[0].second, "test");
}

TEST(DisjointUnion, Identities) {
  const Graph g = cycle_graph(5);
  EXPECT_EQ(disjoint_union(g, empty_graph(0)), g);
  const Graph two = disjoint_union(empty_graph(1), empty_graph(1));
  EXPECT_EQ(two.vertex_count(), 2);
  EXPECT_EQ(two.edge_count(), 0);
}

}  // namespace
}  // namespace irreg
