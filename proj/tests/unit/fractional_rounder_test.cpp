#include <gtest/gtest.h>

#include <random>

#include "irreg/error.hpp"
#include "irreg/fractional_rounder.hpp"
#include "irreg/generators.hpp"
#include "test_support.hpp"

namespace irreg {
namespace {

using testing::make_graph;

FractionalWeights all(int m, const char* q) { return FractionalWeights(m, Rational(q)); }

// Exact per-vertex check of sum_z - 1 < sum_x <= sum_z + 1, done here
// without the library's verify_bound.
bool bound_holds(const Graph& g, const FractionalWeights& z, const SpanningSubgraph& h) {
  std::vector<Rational> diff(g.vertex_count(), 0);
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Rational x = h.contains(e) ? 1 : 0;
    diff[g.edge(e).u] += x - z[e];
    diff[g.edge(e).v] += x - z[e];
  }
  for (const Rational& d : diff) {
    if (!(d > -1 && d <= 1)) return false;
  }
  return true;
}

// Rank of the incidence columns by Gaussian elimination over the rationals.
int incidence_rank(const Graph& g, const std::vector<EdgeId>& edges) {
  const int n = g.vertex_count();
  std::vector<std::vector<Rational>> rows(edges.size(), std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    rows[i][g.edge(edges[i]).u] = 1;
    rows[i][g.edge(edges[i]).v] = 1;
  }
  int rank = 0;
  for (int col = 0; col < n && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r) {
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[pivot], rows[rank]);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      const Rational f = rows[r][col] / rows[rank][col];
      for (int c = 0; c < n; ++c) rows[r][c] -= f * rows[rank][c];
    }
    ++rank;
  }
  return rank;
}

TEST(ParseRational, Forms) {
  EXPECT_EQ(parse_rational("1/2"), Rational(1, 2));
  EXPECT_EQ(parse_rational(" 3 "), Rational(3));
  EXPECT_EQ(parse_rational("0.25"), Rational(1, 4));
  EXPECT_EQ(parse_rational("-2/4"), Rational(-1, 2));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_EQ(format_rational(Rational(6, 8)), "3/4");
}

TEST(ReadWeights, SkipsComments) {
  const FractionalWeights z = read_weights("# z\n1/2\n\n1\n0.75\n");
  ASSERT_EQ(z.size(), 3U);
  EXPECT_EQ(z[2], Rational(3, 4));
}

TEST(CheckWeights, Rejects) {
  const Graph c3 = cycle_graph(3);
  EXPECT_THROW(check_weights(c3, all(2, "1/2")), PreconditionError);
  FractionalWeights z = all(3, "1/2");
  z[1] = Rational(3, 2);
  EXPECT_THROW(check_weights(c3, z), PreconditionError);
}

TEST(Round, IntegralInputUnchanged) {
  const Graph g = random_regular(12, 3, 2);
  FractionalWeights z(g.edge_count());
  for (EdgeId e = 0; e < g.edge_count(); ++e) z[e] = e % 3 == 0 ? 1 : 0;
  const SpanningSubgraph h = round_weights(g, z);
  for (EdgeId e = 0; e < g.edge_count(); ++e) EXPECT_EQ(h.contains(e), z[e] == 1);
  const BoundReport b = verify_bound(g, z, h);
  for (const Rational& d : b.deviation) EXPECT_EQ(d, 0);
}

TEST(Round, TriangleHalvesIsTight) {
  const Graph c3 = cycle_graph(3);
  const FractionalWeights z = all(3, "1/2");
  const SpanningSubgraph h = round_weights(c3, z);
  EXPECT_EQ(h.edge_count(), 3);
  const BoundReport b = verify_bound(c3, z, h);
  for (const Rational& d : b.deviation) EXPECT_EQ(d, 1);
  EXPECT_TRUE(b.holds());
}

TEST(Round, PathP3) {
  const Graph p3 = make_graph(3, {{0, 1}, {1, 2}});
  const FractionalWeights z{Rational(3, 10), Rational(4, 5)};
  const SpanningSubgraph h = round_weights(p3, z);
  EXPECT_TRUE(bound_holds(p3, z, h));
}

TEST(Round, EvenCycleAlternates) {
  const Graph c6 = cycle_graph(6);
  const FractionalWeights z = all(6, "1/2");
  const SpanningSubgraph h = round_weights(c6, z);
  for (Vertex v = 0; v < 6; ++v) EXPECT_EQ(h.degree(v), 1);
}

TEST(VerifyBound, C4OppositePair) {
  const Graph c4 = cycle_graph(4);
  const FractionalWeights z = all(4, "1/2");
  // Edges are stored sorted: 01, 03, 12, 23.
  const std::vector<EdgeId> ids{0, 3};
  const BoundReport b = verify_bound(c4, z, SpanningSubgraph::from_edges(c4, ids));
  for (const Rational& d : b.deviation) EXPECT_EQ(d, 0);
}

TEST(VerifyBound, FlagsViolation) {
  const Graph c4 = cycle_graph(4);
  const FractionalWeights z = all(4, "0");
  EXPECT_FALSE(verify_bound(c4, z, SpanningSubgraph::full(c4)).holds());
}

TEST(Round, TraceIsIndependentAfterFirstPhase) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 20);
    const Graph g = random_min_degree(n, 2, 0.3, rng());
    FractionalWeights z(g.edge_count());
    for (auto& q : z) {
      const int den = 1 + static_cast<int>(rng() % 16);
      q = Rational(static_cast<long>(rng() % (den + 1)), den);
      q.canonicalize();
    }
    RoundingTrace trace;
    const SpanningSubgraph h = round_weights(g, z, &trace);
    EXPECT_TRUE(bound_holds(g, z, h));
    const auto& fl = trace.floating_after_dependence;
    EXPECT_EQ(incidence_rank(g, fl), static_cast<int>(fl.size()));
    EXPECT_TRUE(floating_columns_independent(g, fl));
    // Vertex sums survive the first phase exactly.
    std::vector<Rational> before(n, 0), after(n, 0);
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      before[g.edge(e).u] += z[e];
      before[g.edge(e).v] += z[e];
      after[g.edge(e).u] += trace.after_dependence[e];
      after[g.edge(e).v] += trace.after_dependence[e];
    }
    EXPECT_EQ(before, after);
  }
}

TEST(FloatingColumns, MatchesRank) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Graph g = random_min_degree(8, 1, 0.35, rng());
    std::vector<EdgeId> edges;
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
      if (rng() % 2) edges.push_back(e);
    }
    EXPECT_EQ(floating_columns_independent(g, edges), incidence_rank(g, edges) == static_cast<int>(edges.size()));
  }
}

TEST(Round, Deterministic) {
  const Graph g = random_regular(20, 4, 5);
  const FractionalWeights z = all(g.edge_count(), "1/3");
  EXPECT_EQ(round_weights(g, z), round_weights(g, z));
}

}  // namespace
}  // namespace irreg
