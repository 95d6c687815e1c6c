#include "irreg/graph_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "irreg/error.hpp"

namespace irreg {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Parses exactly `count` whitespace-separated nonnegative integers.
bool parse_ints(std::string_view line, long long* out, int count) {
  for (int i = 0; i < count; ++i) {
    line = trim(line);
    if (line.empty()) return false;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), out[i]);
    if (ec != std::errc() || out[i] < 0) return false;
    line.remove_prefix(ptr - line.data());
    if (!line.empty() && line.front() != ' ' && line.front() != '\t') return false;
  }
  return trim(line).empty();
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

}  // namespace

Graph read_graph(std::string_view text) {
  const auto lines = split_lines(text);
  std::size_t i = 0;
  while (i < lines.size() && skippable(lines[i])) ++i;
  if (i == lines.size()) throw ParseError("missing header line \"n m\"");
  long long header[2];
  if (!parse_ints(lines[i], header, 2)) {
    throw ParseError("line " + std::to_string(i + 1) + ": expected \"n m\"");
  }
  ++i;
  const long long n = header[0];
  const long long m = header[1];
  std::vector<Edge> edges;
  edges.reserve(m);
  for (; i < lines.size(); ++i) {
    if (skippable(lines[i])) continue;
    long long uv[2];
    const std::string where = "line " + std::to_string(i + 1) + ": ";
    if (!parse_ints(lines[i], uv, 2)) throw ParseError(where + "expected \"u v\"");
    if (uv[0] == uv[1]) throw ParseError(where + "loop at vertex " + std::to_string(uv[0]));
    if (uv[0] >= n || uv[1] >= n) throw ParseError(where + "vertex out of range");
    if (uv[0] > uv[1]) throw ParseError(where + "edge must be written as u < v");
    edges.push_back({static_cast<Vertex>(uv[0]), static_cast<Vertex>(uv[1])});
  }
  if (static_cast<long long>(edges.size()) != m) {
    throw ParseError("header announces " + std::to_string(m) + " edges, found " +
                     std::to_string(edges.size()));
  }
  try {
    return Graph(static_cast<int>(n), std::move(edges));
  } catch (const PreconditionError& e) {
    throw ParseError(e.what());
  }
}

std::string write_graph(const Graph& g) {
  std::string out = std::to_string(g.vertex_count()) + ' ' + std::to_string(g.edge_count()) + '\n';
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.u);
    out += ' ';
    out += std::to_string(e.v);
    out += '\n';
  }
  return out;
}

std::string graph_hash(const Graph& g) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : write_graph(g)) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string write_subgraph(const SpanningSubgraph& h,
                           const std::vector<std::pair<std::string, std::string>>& annotations) {
  std::string out = "# subgraph of " + graph_hash(h.parent()) + '\n';
  for (const auto& [k, v] : annotations) out += "# " + k + '=' + v + '\n';
  for (EdgeId e : h.edge_ids()) out += std::to_string(e) + '\n';
  return out;
}

SubgraphFile read_subgraph(std::string_view text) {
  SubgraphFile file;
  const auto lines = split_lines(text);
  constexpr std::string_view kHeader = "# subgraph of ";
  bool have_header = false;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    std::string_view line = trim(lines[i]);
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (!have_header) {
        if (line.substr(0, kHeader.size()) != kHeader) {
          throw ParseError("subgraph file must start with \"# subgraph of <hash>\"");
        }
        file.graph_hash = std::string(trim(line.substr(kHeader.size())));
        have_header = true;
        continue;
      }
      std::string_view body = trim(line.substr(1));
      const auto eq = body.find('=');
      if (eq != std::string_view::npos) {
        file.annotations.emplace_back(std::string(body.substr(0, eq)), std::string(body.substr(eq + 1)));
      }
      continue;
    }
    if (!have_header) throw ParseError("subgraph file must start with \"# subgraph of <hash>\"");
    long long e;
    if (!parse_ints(line, &e, 1)) throw ParseError("line " + std::to_string(i + 1) + ": expected an edge index");
    file.edges.push_back(static_cast<EdgeId>(e));
  }
  if (!have_header) throw ParseError("empty subgraph file");
  return file;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace irreg
