#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <gmpxx.h>

#include "irreg/graph.hpp"

namespace irreg {

using Rational = mpq_class;

/// Parses "p/q", "p" or a finite decimal such as "0.25". Throws ParseError.
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

/// One exact weight per edge, each in [0,1].
using FractionalWeights = std::vector<Rational>;

/// Throws PreconditionError when the size is wrong or a value is outside [0,1].
void check_weights(const Graph& g, std::span<const Rational> z);

/// Reads a z-file: one rational per line in edge order, '#' comments allowed.
FractionalWeights read_weights(std::string_view text);

struct RoundingTrace {
  std::vector<Rational> after_dependence;  // x once the floating columns are independent
  std::vector<EdgeId> floating_after_dependence;
  int dependence_steps = 0;
  int line_steps = 0;
};

/// Rounds z to a 0/1 vector x with sum_z(v) - 1 < sum_x(v) <= sum_z(v) + 1 at
/// every vertex. Floating (non 0/1) values first move along null vectors of
/// the floating incidence columns until those columns are independent, then
/// along lines that keep the sums at vertices of floating degree >= 2 until
/// every floating component is an odd cycle or a single edge; what is left is
/// rounded to the nearer integer with 1/2 going to 1.
SpanningSubgraph round_weights(const Graph& g, std::span<const Rational> z, RoundingTrace* trace = nullptr);

struct BoundReport {
  std::vector<Rational> deviation;  // sum_x(v) - sum_z(v)
  std::vector<Vertex> violations;
  bool holds() const { return violations.empty(); }
};

BoundReport verify_bound(const Graph& g, std::span<const Rational> z, const SpanningSubgraph& h);

/// Floating edges form independent incidence columns exactly when every
/// component is a tree or has one cycle and that cycle is odd.
bool floating_columns_independent(const Graph& g, std::span<const EdgeId> edges);

}  // namespace irreg
