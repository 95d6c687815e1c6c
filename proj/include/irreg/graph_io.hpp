#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "irreg/graph.hpp"

namespace irreg {

/// Edge-list text: "n m" then m lines "u v" with 0 <= u < v < n. Blank lines
/// and lines starting with '#' are ignored. Throws ParseError.
Graph read_graph(std::string_view text);

/// Writes edges in index order, so read_graph(write_graph(g)) == g.
std::string write_graph(const Graph& g);

/// FNV-1a 64 of write_graph(g), as 16 lowercase hex digits.
std::string graph_hash(const Graph& g);

/// Stored subgraph: "# subgraph of <hash>", optional "# key=value" comment
/// lines, then one edge index per line.
struct SubgraphFile {
  std::string graph_hash;
  std::vector<std::pair<std::string, std::string>> annotations;
  std::vector<EdgeId> edges;
};

std::string write_subgraph(const SpanningSubgraph& h,
                           const std::vector<std::pair<std::string, std::string>>& annotations = {});
SubgraphFile read_subgraph(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace irreg
