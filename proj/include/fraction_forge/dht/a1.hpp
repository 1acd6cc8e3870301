#ifndef FRACTION_FORGE_DHT_A1_HPP
#define FRACTION_FORGE_DHT_A1_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <deque>
#include <functional>
#include <numeric>
#include <string>
#include <tuple>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fraction_forge/dht/graph.hpp"

namespace ff {

/// Letters are +k and -k for generator k - 1 and its inverse.
struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;
};

inline std::vector<int> free_reduce(const std::vector<int>& w) {
  std::vector<int> r;
  for (int l : w) {
    if (!r.empty() && r.back() == -l) r.pop_back();
    else r.push_back(l);
  }
  return r;
}

inline std::string word_string(const GroupPresentation& p, const std::vector<int>& w) {
  std::string s;
  for (int l : w) {
    if (!s.empty()) s += ' ';
    s += p.generators.at(std::abs(l) - 1);
    if (l < 0) s += "^-1";
  }
  return s.empty() ? "1" : s;
}

struct A1Presentation {
  int base = 0;
  GroupPresentation group;
  std::vector<int> tree_parent;                  // -1 at the base
  std::vector<std::pair<int, int>> generator_edges;
  std::vector<std::vector<int>> generator_loops;  // based loop through each generator edge
};

/// Spanning tree of a breadth-first search from the base; generators are
/// the edges off the tree and relators the boundaries of all 3- and
/// 4-cycles.
inline A1Presentation a1_presentation(const Graph& g, int base) {
  if (base < 0 || base >= g.size()) throw InputError("base vertex out of range");
  if (!g.connected()) throw PreconditionError("A1 presentation needs a connected graph");
  A1Presentation r;
  r.base = base;
  const int n = g.size();
  r.tree_parent.assign(n, -2);
  r.tree_parent[base] = -1;
  std::deque<int> q{base};
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : g.neighbors(u))
      if (r.tree_parent[v] == -2) {
        r.tree_parent[v] = u;
        q.push_back(v);
      }
  }
  auto in_tree = [&](int u, int v) { return r.tree_parent[u] == v || r.tree_parent[v] == u; };
  std::vector<std::vector<int>> gen(n, std::vector<int>(n, 0));
  for (auto [u, v] : g.edges()) {
    if (in_tree(u, v)) continue;
    r.group.generators.push_back(g.name(u) + "-" + g.name(v));
    r.generator_edges.push_back({u, v});
    const int k = static_cast<int>(r.group.generators.size());
    gen[u][v] = k;
    gen[v][u] = -k;
  }
  auto to_base = [&](int v) {
    std::vector<int> p{v};
    while (r.tree_parent[p.back()] >= 0) p.push_back(r.tree_parent[p.back()]);
    return p;
  };
  for (auto [u, v] : r.generator_edges) {
    auto a = to_base(u), b = to_base(v);
    std::vector<int> loop(a.rbegin(), a.rend());
    loop.insert(loop.end(), b.begin(), b.end());
    r.generator_loops.push_back(std::move(loop));
  }
  auto boundary = [&](const std::vector<int>& cyc) {
    std::vector<int> w;
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      int l = gen[cyc[i]][cyc[(i + 1) % cyc.size()]];
      if (l != 0) w.push_back(l);
    }
    w = free_reduce(w);
    if (!w.empty()) r.group.relators.push_back(std::move(w));
  };
  for (int a = 0; a < n; ++a)
    for (int b : g.neighbors(a)) {
      if (b <= a) continue;
      for (int c : g.neighbors(b))
        if (c > b && g.edge(c, a)) boundary({a, b, c});
    }
  // 4-cycles a b c d with a the least vertex and b < d
  for (int a = 0; a < n; ++a)
    for (int b : g.neighbors(a)) {
      if (b <= a) continue;
      for (int c : g.neighbors(b)) {
        if (c <= a || c == b) continue;
        for (int d : g.neighbors(c))
          if (d > b && d != c && g.edge(d, a)) boundary({a, b, c, d});
      }
    }
  return r;
}

/// Rank and torsion coefficients (> 1, ascending divisibility order) of
/// the abelianisation, by Smith normal form of the exponent-sum matrix.
inline std::pair<int, std::vector<long long>> abelianization_rank(const GroupPresentation& p) {
  const int cols = static_cast<int>(p.generators.size());
  std::vector<std::vector<long long>> m;
  for (auto const& w : p.relators) {
    std::vector<long long> row(cols, 0);
    for (int l : w) row.at(std::abs(l) - 1) += l > 0 ? 1 : -1;
    m.push_back(std::move(row));
  }
  const int rows = static_cast<int>(m.size());
  std::vector<long long> diag;
  int t = 0;
  while (t < rows && t < cols) {
    // pivot: smallest non-zero entry in the remaining block
    int pr = -1, pc = -1;
    for (int i = t; i < rows; ++i)
      for (int j = t; j < cols; ++j)
        if (m[i][j] != 0 && (pr < 0 || std::llabs(m[i][j]) < std::llabs(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    std::swap(m[t], m[pr]);
    for (auto& row : m) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (int i = t + 1; i < rows; ++i) {
        long long f = m[i][t] / m[t][t];
        if (f)
          for (int j = t; j < cols; ++j) m[i][j] -= f * m[t][j];
        if (m[i][t] != 0) {
          std::swap(m[t], m[i]);
          clean = false;
        }
      }
      for (int j = t + 1; j < cols; ++j) {
        long long f = m[t][j] / m[t][t];
        if (f)
          for (int i = t; i < rows; ++i) m[i][j] -= f * m[i][t];
        if (m[t][j] != 0) {
          for (auto& row : m) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // divisibility: fold a non-multiple into the pivot row
      for (int i = t + 1; i < rows && clean; ++i)
        for (int j = t + 1; j < cols && clean; ++j)
          if (m[i][j] % m[t][t] != 0) {
            for (int k = t; k < cols; ++k) m[t][k] += m[i][k];
            clean = false;
          }
    }
    diag.push_back(std::llabs(m[t][t]));
    ++t;
  }
  std::vector<long long> torsion;
  for (long long d : diag)
    if (d > 1) torsion.push_back(d);
  return {cols - static_cast<int>(diag.size()), torsion};
}

/// Based loops of a fixed window length, as maps from I_len sending both
/// ends to the base, grouped into classes of the relation generated by
/// pointwise adjacency. Shorter loops are padded with the base at the end.
class A1BfsOracle {
 public:
  A1BfsOracle(const Graph& g, int base, int len, std::size_t max_loops = 4000000) : base_(base), len_(len) {
    if (base < 0 || base >= g.size()) throw InputError("base vertex out of range");
    if (len < 1 || len > 10) throw BoundError("loop length must be in 1..10");
    if (g.size() > 8) throw BoundError("the loop oracle handles at most 8 vertices");
    std::vector<int> cur(len + 1, base);
    std::function<void(int)> gen = [&](int i) {
      if (i == len) {
        if (g.adjacent(cur[len - 1], base)) {
          codes_.push_back(encode(cur));
          if (codes_.size() > max_loops) throw BoundError("more than " + std::to_string(max_loops) + " loops");
        }
        return;
      }
      for (int v : g.closed_neighbors(cur[i - 1])) {
        cur[i] = v;
        gen(i + 1);
      }
      cur[i] = base;
    };
    gen(1);
    std::sort(codes_.begin(), codes_.end());
    index_.reserve(codes_.size());
    for (std::size_t i = 0; i < codes_.size(); ++i) index_[codes_[i]] = static_cast<int>(i);
    parent_.resize(codes_.size());
    std::iota(parent_.begin(), parent_.end(), 0);
    int comps = static_cast<int>(codes_.size());
    // Start from the constant loop. A loop already joined to the constant
    // loop is skipped: any edge it has to a loop outside that component is
    // seen from the other end, and edges inside it change nothing.
    std::vector<int> order(codes_.size());
    std::iota(order.begin(), order.end(), 0);
    const int konst = index_.at(encode(std::vector<int>(len + 1, base)));
    std::swap(order[0], order[konst]);
    std::vector<int> f(len + 1), h(len + 1, base);
    for (int i : order) {
      if (comps == 1) break;
      if (i != konst && root(i) == root(konst)) continue;
      decode(codes_[i], f);
      std::function<void(int)> nb = [&](int k) {
        if (k == len) {
          if (!g.adjacent(h[len - 1], base)) return;
          int j = index_.at(encode(h));
          int a = root(i), b = root(j);
          if (a != b) {
            parent_[std::max(a, b)] = std::min(a, b);
            --comps;
          }
          return;
        }
        for (int v : g.closed_neighbors(f[k])) {
          if (!g.adjacent(v, h[k - 1])) continue;
          h[k] = v;
          nb(k + 1);
        }
      };
      nb(1);
    }
    classes_ = comps;
    for (std::size_t i = 0; i < parent_.size(); ++i) parent_[i] = root(static_cast<int>(i));
  }

  int length() const { return len_; }
  std::size_t loops() const { return codes_.size(); }
  int classes() const { return classes_; }

  /// Class id of a loop of length <= the window (padded with the base).
  int class_of(std::vector<int> loop) const {
    if (loop.empty() || loop.front() != base_ || loop.back() != base_) throw InputError("not a loop at the base");
    if (static_cast<int>(loop.size()) > len_ + 1) throw BoundError("loop longer than the oracle window");
    loop.resize(len_ + 1, base_);
    auto it = index_.find(encode(loop));
    if (it == index_.end()) throw InputError("not a walk in the graph");
    return parent_[it->second];
  }

  bool contractible(const std::vector<int>& loop) const { return class_of(loop) == class_of({base_}); }

 private:
  static std::uint64_t encode(const std::vector<int>& w) {
    std::uint64_t c = 0;
    for (int v : w) c = (c << 4) | static_cast<std::uint64_t>(v);
    return c;
  }
  void decode(std::uint64_t c, std::vector<int>& w) const {
    for (int i = len_; i >= 0; --i) {
      w[i] = static_cast<int>(c & 15u);
      c >>= 4;
    }
  }
  int root(int a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }

  int base_, len_;
  int classes_ = 0;
  std::vector<std::uint64_t> codes_;
  std::unordered_map<std::uint64_t, int> index_;
  std::vector<int> parent_;
};

inline A1BfsOracle a1_bfs_oracle(const Graph& g, int base, int max_loop_len) { return A1BfsOracle(g, base, max_loop_len); }

struct A1Agreement {
  bool ok = true;
  int rank = 0;
  std::vector<long long> torsion;
  std::size_t loops = 0;
  int classes = 0;
  std::string detail;
};

/// Compares the presentation with the loop oracle. A generator loop of
/// infinite order in the abelianisation must not be contractible; when
/// the abelianisation is trivial every loop in the window must be, which
/// is an observed property of small graphs rather than a theorem.
inline A1Agreement a1_oracle_agreement(const Graph& g, int base, int len) {
  A1Agreement r;
  auto p = a1_presentation(g, base);
  std::tie(r.rank, r.torsion) = abelianization_rank(p.group);
  const bool trivial = r.rank == 0 && r.torsion.empty();
  A1BfsOracle oracle(g, base, len);
  r.loops = oracle.loops();
  r.classes = oracle.classes();
  if ((r.classes == 1) != trivial) {
    r.ok = false;
    r.detail = std::to_string(r.classes) + " loop classes against abelianisation rank " + std::to_string(r.rank);
    return r;
  }
  for (std::size_t k = 0; k < p.generator_loops.size(); ++k) {
    auto const& loop = p.generator_loops[k];
    if (static_cast<int>(loop.size()) > len + 1) continue;
    GroupPresentation killed = p.group;
    killed.relators.push_back({static_cast<int>(k) + 1});
    const bool infinite_order = abelianization_rank(killed).first < r.rank;
    const bool contractible = oracle.contractible(loop);
    if ((infinite_order && contractible) || (trivial && !contractible)) {
      r.ok = false;
      r.detail = "generator " + p.group.generators[k] + (contractible ? " is contractible" : " is not contractible");
      return r;
    }
  }
  return r;
}

}  // namespace ff

#endif
