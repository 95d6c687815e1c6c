#include "irreg/fractional_rounder.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <map>
#include <set>

#include "irreg/error.hpp"

namespace irreg {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

// Union-find with parity, tracking how many cycles each component has.
class ParityForest {
 public:
  explicit ParityForest(int n) : parent_(n), parity_(n, 0), cycles_(n, 0) { reset(); }

  void reset() {
    for (std::size_t v = 0; v < parent_.size(); ++v) parent_[v] = static_cast<int>(v);
    std::fill(parity_.begin(), parity_.end(), 0);
    std::fill(cycles_.begin(), cycles_.end(), 0);
  }

  std::pair<int, int> find(int v) {
    int p = 0;
    int r = v;
    while (parent_[r] != r) {
      p ^= parity_[r];
      r = parent_[r];
    }
    // compress
    int acc = p;
    while (parent_[v] != v) {
      const int next = parent_[v];
      const int here = parity_[v];
      parent_[v] = r;
      parity_[v] = static_cast<char>(acc);
      acc ^= here;
      v = next;
    }
    return {r, p};
  }

  // Would adding edge uv make the incidence columns dependent?
  bool dependent_with(int u, int v) {
    const auto [ru, pu] = find(u);
    const auto [rv, pv] = find(v);
    if (ru != rv) return cycles_[ru] > 0 && cycles_[rv] > 0;
    return cycles_[ru] > 0 || pu != pv;
  }

  void add(int u, int v) {
    const auto [ru, pu] = find(u);
    const auto [rv, pv] = find(v);
    if (ru == rv) {
      ++cycles_[ru];
      return;
    }
    parent_[rv] = ru;
    parity_[rv] = static_cast<char>(pu ^ pv ^ 1);
    cycles_[ru] += cycles_[rv];
  }

 private:
  std::vector<int> parent_;
  std::vector<char> parity_;
  std::vector<int> cycles_;
};

struct Cycle {
  std::vector<Vertex> verts;  // edges[i] joins verts[i] and verts[i+1 mod L]
  std::vector<EdgeId> edges;

  void rotate_to(Vertex start) {
    const auto it = std::find(verts.begin(), verts.end(), start);
    const auto k = it - verts.begin();
    std::rotate(verts.begin(), verts.begin() + k, verts.end());
    std::rotate(edges.begin(), edges.begin() + k, edges.end());
  }
};

class Rounder {
 public:
  Rounder(const Graph& g, std::span<const Rational> z)
      : g_(g), x_(z.begin(), z.end()), in_f_(g.edge_count(), 0), fadj_(g.vertex_count()),
        mark_(g.vertex_count(), 0), depth_(g.vertex_count(), 0), up_(g.vertex_count(), -1) {}

  bool floating(EdgeId e) const { return x_[e] > 0 && x_[e] < 1; }

  void dependence_phase(RoundingTrace* trace) {
    ParityForest forest(g_.vertex_count());
    bool dirty = false;
    for (EdgeId e = 0; e < g_.edge_count(); ++e) {
      if (!floating(e)) continue;
      while (true) {
        if (dirty) {
          forest.reset();
          for (Vertex v = 0; v < g_.vertex_count(); ++v) {
            for (EdgeId f : fadj_[v]) {
              if (g_.edge(f).u == v) forest.add(g_.edge(f).u, g_.edge(f).v);
            }
          }
          dirty = false;
        }
        const Edge& ed = g_.edge(e);
        if (!forest.dependent_with(ed.u, ed.v)) {
          forest.add(ed.u, ed.v);
          insert(e);
          break;
        }
        const auto coeff = circuit(e);
        bool e_fixed = false;
        for (EdgeId f : step(coeff)) {
          if (f == e) {
            e_fixed = true;
          } else {
            erase(f);
            dirty = true;
          }
        }
        if (trace) ++trace->dependence_steps;
        if (e_fixed) break;
      }
    }
    if (trace) {
      trace->after_dependence = x_;
      trace->floating_after_dependence.clear();
      for (EdgeId e = 0; e < g_.edge_count(); ++e) {
        if (in_f_[e]) trace->floating_after_dependence.push_back(e);
      }
    }
  }

  void line_phase(RoundingTrace* trace) {
    while (true) {
      const auto walk = next_line_walk();
      if (walk.empty()) return;
      std::map<EdgeId, int> coeff;
      for (std::size_t i = 0; i < walk.size(); ++i) coeff[walk[i]] += (i % 2 == 0) ? 1 : -1;
      // Sums at vertices of floating degree >= 2 must not move.
      std::map<Vertex, int> drift;
      for (const auto& [f, c] : coeff) {
        drift[g_.edge(f).u] += c;
        drift[g_.edge(f).v] += c;
      }
      for (const auto& [v, d] : drift) {
        if (d != 0 && fadj_[v].size() >= 2) throw InternalError("round_weights: line direction moves an inner vertex sum");
      }
      for (EdgeId f : step(coeff)) erase(f);
      if (trace) ++trace->line_steps;
    }
  }

  SpanningSubgraph finish() {
    SpanningSubgraph h(g_);
    const Rational half(1, 2);
    for (EdgeId e = 0; e < g_.edge_count(); ++e) h.set(e, x_[e] >= half);
    return h;
  }

 private:
  void insert(EdgeId e) {
    in_f_[e] = 1;
    fadj_[g_.edge(e).u].push_back(e);
    fadj_[g_.edge(e).v].push_back(e);
  }

  void erase(EdgeId e) {
    if (!in_f_[e]) return;
    in_f_[e] = 0;
    for (Vertex w : {g_.edge(e).u, g_.edge(e).v}) {
      auto& list = fadj_[w];
      list.erase(std::find(list.begin(), list.end(), e));
    }
  }

  // Moves x along coeff by the smallest step that pins a variable to 0 or 1
  // (positive direction on ties). Returns the newly fixed edges.
  std::vector<EdgeId> step(const std::map<EdgeId, int>& coeff) {
    bool have_pos = false;
    bool have_neg = false;
    Rational up;
    Rational down;
    for (const auto& [e, c] : coeff) {
      if (c == 0) continue;
      const Rational lo = x_[e] / std::abs(c);
      const Rational hi = (1 - x_[e]) / std::abs(c);
      const Rational& room_up = c > 0 ? hi : lo;
      const Rational& room_down = c > 0 ? lo : hi;
      if (!have_pos || room_up < up) up = room_up;
      if (!have_neg || room_down < down) down = room_down;
      have_pos = have_neg = true;
    }
    if (!have_pos) throw InternalError("round_weights: zero direction");
    const Rational nu = up <= down ? up : Rational(-down);
    std::vector<EdgeId> fixed;
    for (const auto& [e, c] : coeff) {
      if (c == 0) continue;
      x_[e] += nu * c;
      if (x_[e] < 0 || x_[e] > 1) throw InternalError("round_weights: step left [0,1]");
      if (x_[e] == 0 || x_[e] == 1) fixed.push_back(e);
    }
    if (fixed.empty()) throw InternalError("round_weights: step fixed no variable");
    return fixed;
  }

  // Component of F + e around e; fills comp_verts_, comp_edges_ and a BFS tree.
  void collect_component(EdgeId extra) {
    ++stamp_;
    comp_verts_.clear();
    comp_edges_.clear();
    const Vertex root = g_.edge(extra).u;
    std::deque<Vertex> queue = {root};
    mark_[root] = stamp_;
    depth_[root] = 0;
    up_[root] = -1;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      comp_verts_.push_back(v);
      auto visit = [&](EdgeId f) {
        const Vertex w = g_.edge(f).other(v);
        if (mark_[w] != stamp_) {
          mark_[w] = stamp_;
          depth_[w] = depth_[v] + 1;
          up_[w] = f;
          queue.push_back(w);
        }
      };
      for (EdgeId f : fadj_[v]) visit(f);
      if (v == g_.edge(extra).u || v == g_.edge(extra).v) visit(extra);
    }
    std::set<EdgeId> edges;
    for (Vertex v : comp_verts_) {
      for (EdgeId f : fadj_[v]) edges.insert(f);
    }
    edges.insert(extra);
    comp_edges_.assign(edges.begin(), edges.end());
  }

  Cycle fundamental_cycle(EdgeId f) const {
    Vertex x = g_.edge(f).u;
    Vertex y = g_.edge(f).v;
    std::vector<Vertex> vx = {x};
    std::vector<Vertex> vy = {y};
    std::vector<EdgeId> ex;
    std::vector<EdgeId> ey;
    while (x != y) {
      if (depth_[x] >= depth_[y]) {
        ex.push_back(up_[x]);
        x = g_.edge(up_[x]).other(x);
        vx.push_back(x);
      } else {
        ey.push_back(up_[y]);
        y = g_.edge(up_[y]).other(y);
        vy.push_back(y);
      }
    }
    Cycle c;
    c.verts = vx;
    for (auto it = vy.rbegin() + 1; it != vy.rend(); ++it) c.verts.push_back(*it);
    c.edges = ex;
    for (auto it = ey.rbegin(); it != ey.rend(); ++it) c.edges.push_back(*it);
    c.edges.push_back(f);
    return c;
  }

  Cycle order_cycle(const std::vector<EdgeId>& edges) const {
    std::map<Vertex, std::vector<EdgeId>> at;
    for (EdgeId f : edges) {
      at[g_.edge(f).u].push_back(f);
      at[g_.edge(f).v].push_back(f);
    }
    Cycle c;
    Vertex v = g_.edge(edges.front()).u;
    EdgeId prev = -1;
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const auto& pair = at[v];
      if (pair.size() != 2) throw InternalError("round_weights: symmetric difference is not a cycle");
      const EdgeId f = pair[0] == prev ? pair[1] : pair[0];
      c.verts.push_back(v);
      c.edges.push_back(f);
      v = g_.edge(f).other(v);
      prev = f;
    }
    return c;
  }

  // Shortest path inside the current component from any vertex of `from` to
  // any vertex of `to`; returns the vertex and edge sequences.
  std::pair<std::vector<Vertex>, std::vector<EdgeId>> connect(const Cycle& from, const Cycle& to, EdgeId extra) {
    std::set<Vertex> target(to.verts.begin(), to.verts.end());
    std::map<Vertex, EdgeId> via;
    std::deque<Vertex> queue;
    for (Vertex v : from.verts) {
      via[v] = -1;
      queue.push_back(v);
    }
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      if (target.count(v)) {
        std::vector<Vertex> verts = {v};
        std::vector<EdgeId> edges;
        while (via[verts.back()] != -1) {
          edges.push_back(via[verts.back()]);
          verts.push_back(g_.edge(edges.back()).other(verts.back()));
        }
        std::reverse(verts.begin(), verts.end());
        std::reverse(edges.begin(), edges.end());
        return {verts, edges};
      }
      auto visit = [&](EdgeId f) {
        const Vertex w = g_.edge(f).other(v);
        if (!via.count(w)) {
          via[w] = f;
          queue.push_back(w);
        }
      };
      for (EdgeId f : fadj_[v]) visit(f);
      if (v == g_.edge(extra).u || v == g_.edge(extra).v) visit(extra);
    }
    throw InternalError("round_weights: odd cycles of one component are not connected");
  }

  // A nonzero integer vector c on F + e with A c = 0, supported on an even
  // cycle or on two odd cycles joined by a path.
  std::map<EdgeId, int> circuit(EdgeId extra) {
    collect_component(extra);
    std::vector<Cycle> cycles;
    for (EdgeId f : comp_edges_) {
      const Vertex a = g_.edge(f).u;
      const Vertex b = g_.edge(f).v;
      if (up_[a] == f || up_[b] == f) continue;
      cycles.push_back(fundamental_cycle(f));
    }
    std::vector<EdgeId> walk;
    for (const Cycle& c : cycles) {
      if (c.edges.size() % 2 == 0) {
        walk = c.edges;
        break;
      }
    }
    if (walk.empty()) {
      if (cycles.size() != 2) throw InternalError("round_weights: dependent component without two odd cycles");
      std::set<EdgeId> first(cycles[0].edges.begin(), cycles[0].edges.end());
      std::set<EdgeId> second(cycles[1].edges.begin(), cycles[1].edges.end());
      std::vector<EdgeId> sym;
      std::set_symmetric_difference(first.begin(), first.end(), second.begin(), second.end(), std::back_inserter(sym));
      if (sym.size() < first.size() + second.size()) {
        walk = order_cycle(sym).edges;
      } else {
        auto [pv, pe] = connect(cycles[0], cycles[1], extra);
        Cycle c1 = cycles[0];
        Cycle c2 = cycles[1];
        c1.rotate_to(pv.front());
        c2.rotate_to(pv.back());
        walk = c1.edges;
        walk.insert(walk.end(), pe.begin(), pe.end());
        walk.insert(walk.end(), c2.edges.begin(), c2.edges.end());
        walk.insert(walk.end(), pe.rbegin(), pe.rend());
      }
    }
    std::map<EdgeId, int> coeff;
    for (std::size_t i = 0; i < walk.size(); ++i) coeff[walk[i]] += (i % 2 == 0) ? 1 : -1;
    std::map<Vertex, int> sums;
    for (const auto& [f, c] : coeff) {
      sums[g_.edge(f).u] += c;
      sums[g_.edge(f).v] += c;
    }
    for (const auto& [v, s] : sums) {
      if (s != 0) throw InternalError("round_weights: dependence vector does not cancel at a vertex");
    }
    return coeff;
  }

  // Edge walk along which to move in the line phase, or empty when every
  // floating component is an odd cycle or a single edge.
  std::vector<EdgeId> next_line_walk() {
    ++stamp_;
    for (Vertex s = 0; s < g_.vertex_count(); ++s) {
      if (fadj_[s].empty() || mark_[s] == stamp_) continue;
      std::vector<Vertex> verts;
      std::deque<Vertex> queue = {s};
      mark_[s] = stamp_;
      std::size_t degree_sum = 0;
      while (!queue.empty()) {
        const Vertex v = queue.front();
        queue.pop_front();
        verts.push_back(v);
        degree_sum += fadj_[v].size();
        for (EdgeId f : fadj_[v]) {
          const Vertex w = g_.edge(f).other(v);
          if (mark_[w] != stamp_) {
            mark_[w] = stamp_;
            queue.push_back(w);
          }
        }
      }
      const std::size_t edges = degree_sum / 2;
      if (edges == 1) continue;
      std::vector<Vertex> leaves;
      for (Vertex v : verts) {
        if (fadj_[v].size() == 1) leaves.push_back(v);
      }
      if (leaves.empty()) continue;  // a cycle; odd after the dependence phase
      std::sort(leaves.begin(), leaves.end());
      if (edges > verts.size()) throw InternalError("round_weights: floating component has two cycles");
      if (edges + 1 == verts.size()) return path_between(leaves[0], [&](Vertex v) { return v == leaves[1]; });
      // Unicyclic: strip leaves to find the cycle.
      std::map<Vertex, int> deg;
      std::deque<Vertex> strip;
      for (Vertex v : verts) {
        deg[v] = static_cast<int>(fadj_[v].size());
        if (deg[v] == 1) strip.push_back(v);
      }
      std::set<Vertex> removed;
      while (!strip.empty()) {
        const Vertex v = strip.front();
        strip.pop_front();
        removed.insert(v);
        for (EdgeId f : fadj_[v]) {
          const Vertex w = g_.edge(f).other(v);
          if (!removed.count(w) && --deg[w] == 1) strip.push_back(w);
        }
      }
      auto on_cycle = [&](Vertex v) { return !removed.count(v); };
      std::vector<EdgeId> lead = path_between(leaves[0], on_cycle);
      Vertex r = leaves[0];
      for (EdgeId f : lead) r = g_.edge(f).other(r);
      // Walk once around the cycle from r.
      std::vector<EdgeId> around;
      Vertex v = r;
      EdgeId prev = -1;
      do {
        EdgeId next = -1;
        for (EdgeId f : fadj_[v]) {
          if (f != prev && on_cycle(g_.edge(f).other(v))) {
            next = f;
            break;
          }
        }
        around.push_back(next);
        v = g_.edge(next).other(v);
        prev = next;
      } while (v != r);
      std::vector<EdgeId> walk = lead;
      walk.insert(walk.end(), around.begin(), around.end());
      walk.insert(walk.end(), lead.rbegin(), lead.rend());
      return walk;
    }
    return {};
  }

  template <class Pred>
  std::vector<EdgeId> path_between(Vertex from, Pred is_target) {
    std::map<Vertex, EdgeId> via = {{from, -1}};
    std::deque<Vertex> queue = {from};
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      if (v != from && is_target(v)) {
        std::vector<EdgeId> path;
        for (Vertex w = v; via[w] != -1; w = g_.edge(via[w]).other(w)) path.push_back(via[w]);
        std::reverse(path.begin(), path.end());
        return path;
      }
      for (EdgeId f : fadj_[v]) {
        const Vertex w = g_.edge(f).other(v);
        if (!via.count(w)) {
          via[w] = f;
          queue.push_back(w);
        }
      }
    }
    throw InternalError("round_weights: no path inside a floating component");
  }

  const Graph& g_;
  std::vector<Rational> x_;
  std::vector<char> in_f_;
  std::vector<std::vector<EdgeId>> fadj_;
  std::vector<int> mark_;
  int stamp_ = 0;
  std::vector<int> depth_;
  std::vector<EdgeId> up_;
  std::vector<Vertex> comp_verts_;
  std::vector<EdgeId> comp_edges_;
};

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  std::string_view body = s;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  Rational q;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw ParseError("bad rational '" + std::string(s) + "'");
    const mpz_class d{std::string(den)};
    if (d == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    q = Rational(mpz_class(std::string(num)), d);
  } else if (const auto dot = body.find('.'); dot != std::string_view::npos) {
    const auto whole = body.substr(0, dot);
    const auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) || (whole.empty() && frac.empty())) {
      throw ParseError("bad rational '" + std::string(s) + "'");
    }
    mpz_class scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const mpz_class w = whole.empty() ? mpz_class(0) : mpz_class(std::string(whole));
    const mpz_class f = frac.empty() ? mpz_class(0) : mpz_class(std::string(frac));
    q = Rational(w * scale + f, scale);
  } else {
    if (!all_digits(body)) throw ParseError("bad rational '" + std::string(s) + "'");
    q = Rational(mpz_class(std::string(body)));
  }
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

std::string format_rational(const Rational& q) {
  Rational c = q;
  c.canonicalize();
  return c.get_str();
}

void check_weights(const Graph& g, std::span<const Rational> z) {
  if (static_cast<int>(z.size()) != g.edge_count()) {
    throw PreconditionError("weight count " + std::to_string(z.size()) + " does not match edge count " +
                            std::to_string(g.edge_count()));
  }
  for (std::size_t e = 0; e < z.size(); ++e) {
    if (z[e] < 0 || z[e] > 1) throw PreconditionError("weight of edge " + std::to_string(e) + " outside [0,1]");
  }
}

FractionalWeights read_weights(std::string_view text) {
  FractionalWeights z;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const auto line = trim(text.substr(pos, end - pos));
    if (!line.empty() && line.front() != '#') z.push_back(parse_rational(line));
    pos = end + 1;
  }
  return z;
}

SpanningSubgraph round_weights(const Graph& g, std::span<const Rational> z, RoundingTrace* trace) {
  check_weights(g, z);
  if (trace) *trace = {};
  Rounder r(g, z);
  r.dependence_phase(trace);
  r.line_phase(trace);
  return r.finish();
}

BoundReport verify_bound(const Graph& g, std::span<const Rational> z, const SpanningSubgraph& h) {
  check_weights(g, z);
  BoundReport report;
  report.deviation.assign(g.vertex_count(), Rational(0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    const Rational d = (h.contains(e) ? Rational(1) : Rational(0)) - z[e];
    report.deviation[g.edge(e).u] += d;
    report.deviation[g.edge(e).v] += d;
  }
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (report.deviation[v] <= -1 || report.deviation[v] > 1) report.violations.push_back(v);
  }
  return report;
}

bool floating_columns_independent(const Graph& g, std::span<const EdgeId> edges) {
  ParityForest forest(g.vertex_count());
  for (EdgeId e : edges) {
    const Edge& ed = g.edge(e);
    if (forest.dependent_with(ed.u, ed.v)) return false;
    forest.add(ed.u, ed.v);
  }
  return true;
}

}  // namespace irreg
