#include "irreg/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

#include "irreg/error.hpp"

namespace irreg {

namespace {

constexpr int kChunkBits = 4;

std::vector<EdgeId> mask_edges(std::uint32_t mask) {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < 32; ++e) {
    if (mask >> e & 1) out.push_back(e);
  }
  return out;
}

// Degree and multiplicity bookkeeping under single-edge toggles. Tracks the
// largest and the smallest count over k in [0, top].
class ProfileTracker {
 public:
  ProfileTracker(const Graph& g, int top)
      : g_(g), top_(top), degree_(g.vertex_count(), 0), count_(top + 2, 0), hist_(g.vertex_count() + 1, 0) {
    count_[0] = g.vertex_count();
    hist_[0] = top_;  // counts for k = 1..top are zero
    hist_[g.vertex_count()] += 1;
    max_ = g.vertex_count();
    min_ = top_ > 0 ? 0 : g.vertex_count();
  }

  void toggle(EdgeId e, bool on) {
    const int delta = on ? 1 : -1;
    shift(g_.edge(e).u, delta);
    shift(g_.edge(e).v, delta);
  }

  int max_count() const { return max_; }
  int min_count() const { return min_; }

 private:
  void shift(Vertex v, int delta) {
    const int from = degree_[v];
    const int to = from + delta;
    degree_[v] = to;
    bump(from, -1);
    bump(to, +1);
  }

  void bump(int k, int delta) {
    int& c = count_[k];
    if (k <= top_) --hist_[c];
    c += delta;
    if (k > top_) {
      max_ = std::max(max_, c);
      return;
    }
    ++hist_[c];
    if (c > max_) max_ = c;
    while (hist_[max_] == 0 && max_ > 0) --max_;
    if (c < min_) min_ = c;
    while (hist_[min_] == 0 && min_ < static_cast<int>(hist_.size()) - 1) ++min_;
  }

  const Graph& g_;
  int top_;
  std::vector<int> degree_;
  std::vector<int> count_;
  std::vector<int> hist_;
  int max_ = 0;
  int min_ = 0;
};

// Scores every subset with score(tracker); keeps the first minimum in Gray order
// within each chunk, and the lowest chunk among equal minima.
template <class Score>
std::pair<long long, std::uint32_t> enumerate(const Graph& g, int top, const OracleOptions& options, Score score,
                                              std::uint64_t* visited) {
  const int m = g.edge_count();
  if (m > kOracleEdgeCap) {
    throw CapExceeded("oracle: " + std::to_string(m) + " edges exceeds the cap of " + std::to_string(kOracleEdgeCap));
  }
  const int high = std::min(m, kChunkBits);
  const int low = m - high;
  const int chunks = 1 << high;
  std::vector<long long> best(chunks, std::numeric_limits<long long>::max());
  std::vector<std::uint32_t> arg(chunks, 0);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int c = next++; c < chunks; c = next++) {
      ProfileTracker t(g, top);
      std::uint32_t mask = 0;
      for (int b = 0; b < high; ++b) {
        if (c >> b & 1) {
          t.toggle(low + b, true);
          mask |= 1u << (low + b);
        }
      }
      long long s = score(t);
      best[c] = s;
      arg[c] = mask;
      const std::uint64_t steps = std::uint64_t{1} << low;
      for (std::uint64_t i = 1; i < steps; ++i) {
        const int bit = std::countr_zero(i);
        const bool on = !(mask >> bit & 1);
        mask ^= 1u << bit;
        t.toggle(bit, on);
        s = score(t);
        if (s < best[c]) {
          best[c] = s;
          arg[c] = mask;
        }
      }
    }
  };
  const int threads = std::max(1, std::min(options.threads, chunks));
  std::vector<std::thread> pool;
  for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  int pick = 0;
  for (int c = 1; c < chunks; ++c) {
    if (best[c] < best[pick]) pick = c;
  }
  if (visited) *visited = std::uint64_t{1} << m;
  return {best[pick], arg[pick]};
}

}  // namespace

MinMResult min_m_bruteforce(const Graph& g, const OracleOptions& options) {
  MinMResult out;
  const int top = std::max(0, g.max_degree());
  const auto [value, mask] =
      enumerate(g, top, options, [](const ProfileTracker& t) { return static_cast<long long>(t.max_count()); },
                &out.subsets);
  out.min_m = static_cast<int>(value);
  out.witness = mask_edges(mask);
  return out;
}

Conjecture11Result check_conjecture11(const Graph& g, const OracleOptions& options) {
  if (!g.is_regular()) throw PreconditionError("check_conjecture11 needs a regular graph");
  const int d = g.vertex_count() == 0 ? 0 : g.max_degree();
  const long long n = g.vertex_count();
  // (d+1) * deviation, an integer.
  auto score = [&](const ProfileTracker& t) {
    return std::max((d + 1LL) * t.max_count() - n, n - (d + 1LL) * t.min_count());
  };
  const auto [value, mask] = enumerate(g, d, options, score, nullptr);
  Conjecture11Result out;
  out.best_deviation = Rational(static_cast<long>(value), static_cast<long>(d + 1));
  out.best_deviation.canonicalize();
  out.feasible = out.best_deviation <= 2;
  out.witness = mask_edges(mask);
  return out;
}

Conjecture12Result check_conjecture12(const Graph& g, const OracleOptions& options) {
  const auto r = min_m_bruteforce(g, options);
  Conjecture12Result out;
  const int delta = g.vertex_count() == 0 ? 0 : g.min_degree();
  out.min_m = r.min_m;
  out.bound = Rational(g.vertex_count(), delta + 1) + 2;
  out.bound.canonicalize();
  out.holds = out.min_m <= out.bound;
  out.witness = r.witness;
  return out;
}

bool parity_lower_bound(long long n, int d) {
  if (d < 0 || n % (d + 1) != 0) throw PreconditionError("parity_lower_bound needs (d+1) | n");
  return ((d + 1) / 2 * (n / (d + 1))) % 2 == 1;
}

std::string oracle_csv_row(const std::string& graph_id, const Conjecture12Result& r) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(3);
  os << graph_id << ',' << r.min_m << ',' << r.bound.get_d() << ',' << (r.holds ? "pass" : "fail");
  return os.str();
}

}  // namespace irreg
