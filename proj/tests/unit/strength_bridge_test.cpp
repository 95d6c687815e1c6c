#include <gtest/gtest.h>

#include "irreg/error.hpp"
#include "irreg/flow.hpp"
#include "irreg/generators.hpp"
#include "irreg/strength_bridge.hpp"
#include "test_support.hpp"

namespace irreg {
namespace {

using testing::make_graph;

// Smallest s found by trying every weighting in [1,s]^m.
int naive_strength(const Graph& g, int cap) {
  const int m = g.edge_count();
  for (int s = 1; s <= cap; ++s) {
    std::vector<int> w(m, 1);
    while (true) {
      if (is_irregular(g, {s, w})) return s;
      int i = 0;
      while (i < m && w[i] == s) w[i++] = 1;
      if (i == m) break;
      ++w[i];
    }
  }
  return -1;
}

TEST(Strength, PathP3) {
  const IrregularWeighting w = irregularity_strength(path_graph(3));
  EXPECT_EQ(w.s, 2);
  EXPECT_TRUE(is_irregular(path_graph(3), w));
}

TEST(Strength, Triangle) {
  EXPECT_EQ(irregularity_strength(cycle_graph(3)).s, 3);
  EXPECT_EQ(naive_strength(cycle_graph(3), 4), 3);
}

TEST(Strength, IsolatedEdgeRejected) {
  EXPECT_THROW(irregularity_strength(path_graph(2)), PreconditionError);
  EXPECT_THROW(check_strength_structure(empty_graph(2)), PreconditionError);
}

TEST(Strength, AgreesWithNaiveSearch) {
  const std::vector<Graph> graphs{cycle_graph(4), cycle_graph(5), star_graph(4), complete_graph(4),
                                  path_graph(5), complete_bipartite(2, 3)};
  for (const Graph& g : graphs) EXPECT_EQ(irregularity_strength(g, 8).s, naive_strength(g, 8));
}

TEST(Strength, CapExceeded) { EXPECT_THROW(irregularity_strength(cycle_graph(3), 2), CapExceeded); }

TEST(Bridge, PathIsBipartite) {
  const Graph p3 = path_graph(3);
  const IrregularWeighting w{2, {1, 2}};
  ASSERT_TRUE(is_irregular(p3, w));
  const StrengthResult r = strength_to_subgraph(p3, w);
  EXPECT_EQ(r.which, StrengthCase::bipartite);
  EXPECT_EQ(r.bound, 3);
  EXPECT_LE(r.achieved, 3);
  EXPECT_TRUE(r.windows_ok);
}

TEST(Bridge, UnitWeightsNeverSeparate) {
  // Two vertices always share a degree, so s = 1 never works past one vertex.
  EXPECT_FALSE(is_irregular(path_graph(3), {1, {1, 1}}));
  EXPECT_GE(irregularity_strength(star_graph(3)).s, 2);
}

TEST(Bridge, C5Regular) {
  const Graph c5 = cycle_graph(5);
  const IrregularWeighting w = irregularity_strength(c5);
  EXPECT_EQ(w.s, 3);
  const StrengthResult r = strength_to_subgraph(c5, w);
  EXPECT_EQ(r.which, StrengthCase::regular);
  EXPECT_EQ(r.s_used, 2);
  EXPECT_EQ(r.bound, 4);
  EXPECT_LE(r.achieved, 4);
}

TEST(Bridge, BipartiteRegularC6) {
  const Graph c6 = cycle_graph(6);
  const IrregularWeighting w = irregularity_strength(c6);
  const StrengthResult r = strength_to_subgraph(c6, w);
  EXPECT_EQ(r.which, StrengthCase::bipartite_regular);
  EXPECT_EQ(r.bound, 2 * w.s - 3);
  EXPECT_LE(r.achieved, r.bound);
  EXPECT_TRUE(r.windows_ok);
}

TEST(Bridge, CaseNames) {
  EXPECT_EQ(to_string(StrengthCase::general), "2s");
  EXPECT_EQ(to_string(StrengthCase::bipartite_regular), "2s-3");
}

TEST(Flow, SimpleMaxFlow) {
  MaxFlow f(4);
  f.add_arc(0, 1, 3);
  f.add_arc(0, 2, 2);
  const int a = f.add_arc(1, 3, 2);
  f.add_arc(2, 3, 3);
  f.add_arc(1, 2, 1);
  EXPECT_EQ(f.run(0, 3), 5);
  EXPECT_EQ(f.flow(a), 2);
}

TEST(Flow, CirculationBounds) {
  // Triangle with lower bound 1 on every arc.
  const std::vector<BoundedArc> arcs{{0, 1, 1, 2}, {1, 2, 1, 2}, {2, 0, 1, 2}};
  const auto f = feasible_circulation(3, arcs);
  ASSERT_TRUE(f.has_value());
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    EXPECT_GE((*f)[i], 1);
    EXPECT_LE((*f)[i], 2);
  }
  const std::vector<BoundedArc> bad{{0, 1, 2, 2}, {1, 0, 0, 1}};
  EXPECT_FALSE(feasible_circulation(2, bad).has_value());
}

}  // namespace
}  // namespace irreg
