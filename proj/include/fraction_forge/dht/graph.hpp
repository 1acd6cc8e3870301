#ifndef FRACTION_FORGE_DHT_GRAPH_HPP
#define FRACTION_FORGE_DHT_GRAPH_HPP

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fraction_forge/error.hpp"

namespace ff {

/// A finite graph in the reflexive sense: every vertex is adjacent to
/// itself, which is never stored. Edges are symmetric.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::vector<std::string> names) : names_(std::move(names)) {
    const int n = size();
    adj_.assign(n, std::vector<char>(n, 0));
    nbr_.assign(n, {});
    closed_.resize(n);
    for (int v = 0; v < n; ++v) closed_[v] = {v};
  }

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& name(int v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }

  int find(const std::string& n) const {
    auto it = std::find(names_.begin(), names_.end(), n);
    return it == names_.end() ? -1 : static_cast<int>(it - names_.begin());
  }

  void add_edge(int u, int v) {
    if (u == v) throw InputError("loop at '" + name(u) + "': loops are implicit");
    if (adj_.at(u).at(v)) return;
    adj_[u][v] = adj_[v][u] = 1;
    insert_sorted(nbr_[u], v);
    insert_sorted(nbr_[v], u);
    insert_sorted(closed_[u], v);
    insert_sorted(closed_[v], u);
  }

  /// Reflexive adjacency.
  bool adjacent(int u, int v) const { return u == v || adj_[u][v] != 0; }
  bool edge(int u, int v) const { return u != v && adj_[u][v] != 0; }
  /// Neighbours other than v itself, ascending.
  const std::vector<int>& neighbors(int v) const { return nbr_.at(v); }
  /// Neighbours including v itself, ascending.
  const std::vector<int>& closed_neighbors(int v) const { return closed_.at(v); }

  int num_edges() const {
    int e = 0;
    for (auto const& n : nbr_) e += static_cast<int>(n.size());
    return e / 2;
  }

  std::vector<std::pair<int, int>> edges() const {
    std::vector<std::pair<int, int>> r;
    for (int u = 0; u < size(); ++u)
      for (int v : nbr_[u])
        if (u < v) r.push_back({u, v});
    return r;
  }

  bool connected() const {
    if (size() == 0) return true;
    std::vector<char> seen(size(), 0);
    std::vector<int> st{0};
    seen[0] = 1;
    int count = 1;
    while (!st.empty()) {
      int u = st.back();
      st.pop_back();
      for (int v : nbr_[u])
        if (!seen[v]) {
          seen[v] = 1;
          ++count;
          st.push_back(v);
        }
    }
    return count == size();
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.names_ == b.names_ && a.adj_ == b.adj_; }

 private:
  static void insert_sorted(std::vector<int>& xs, int v) { xs.insert(std::upper_bound(xs.begin(), xs.end(), v), v); }

  std::vector<std::string> names_;
  std::vector<std::vector<char>> adj_;
  std::vector<std::vector<int>> nbr_, closed_;
};

/// Vertex images, indexed by source vertex.
using GraphMap = std::vector<int>;

inline bool is_graph_map(const Graph& g, const Graph& h, const GraphMap& f) {
  if (static_cast<int>(f.size()) != g.size()) return false;
  for (int v : f)
    if (v < 0 || v >= h.size()) return false;
  for (auto [u, v] : g.edges())
    if (!h.adjacent(f[u], f[v])) return false;
  return true;
}

inline GraphMap identity_map(const Graph& g) {
  GraphMap f(g.size());
  for (int v = 0; v < g.size(); ++v) f[v] = v;
  return f;
}

/// (g after f)
inline GraphMap compose(const GraphMap& g, const GraphMap& f) {
  GraphMap r(f.size());
  for (std::size_t v = 0; v < f.size(); ++v) r[v] = g.at(f[v]);
  return r;
}

inline std::string map_name(const Graph& h, const GraphMap& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? "," : "") + h.name(f[i]);
  return s + ")";
}

/// I_m: vertices 0..m in a line.
inline Graph interval_graph(int m) {
  std::vector<std::string> n;
  for (int i = 0; i <= m; ++i) n.push_back(std::to_string(i));
  Graph g(n);
  for (int i = 0; i < m; ++i) g.add_edge(i, i + 1);
  return g;
}

/// C_m: I_m with 0 and m identified; vertices 0..m-1. Needs m >= 3 to be
/// a simple cycle.
inline Graph cycle_graph(int m) {
  if (m < 3) throw InputError("cycle graphs need at least 3 vertices");
  std::vector<std::string> n;
  for (int i = 0; i < m; ++i) n.push_back(std::to_string(i));
  Graph g(n);
  for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
  return g;
}

inline Graph complete_graph(int m) {
  std::vector<std::string> n;
  for (int i = 0; i < m; ++i) n.push_back(std::to_string(i));
  Graph g(n);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) g.add_edge(i, j);
  return g;
}

/// Vertex (v, w) is numbered v * |H| + w.
inline Graph box_product(const Graph& g, const Graph& h) {
  std::vector<std::string> n;
  for (int v = 0; v < g.size(); ++v)
    for (int w = 0; w < h.size(); ++w) n.push_back("(" + g.name(v) + "," + h.name(w) + ")");
  Graph r(n);
  const int hs = h.size();
  for (int v = 0; v < g.size(); ++v)
    for (int w = 0; w < hs; ++w) {
      for (int w2 : h.neighbors(w))
        if (w < w2) r.add_edge(v * hs + w, v * hs + w2);
      for (int v2 : g.neighbors(v))
        if (v < v2) r.add_edge(v * hs + w, v2 * hs + w);
    }
  return r;
}

/// All graph maps g -> h in lexicographic order of their image lists.
inline std::vector<GraphMap> enumerate_graph_maps(const Graph& g, const Graph& h, std::size_t max_maps = 200000) {
  std::vector<GraphMap> out;
  GraphMap f(g.size(), -1);
  std::function<void(int)> rec = [&](int v) {
    if (v == g.size()) {
      out.push_back(f);
      if (out.size() > max_maps) throw BoundError("more than " + std::to_string(max_maps) + " graph maps");
      return;
    }
    for (int w = 0; w < h.size(); ++w) {
      bool ok = true;
      for (int u : g.neighbors(v))
        if (u < v && !h.adjacent(f[u], w)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      f[v] = w;
      rec(v + 1);
    }
    f[v] = -1;
  };
  rec(0);
  return out;
}

struct HomGraph {
  Graph graph;
  std::vector<GraphMap> maps;  // vertex i of graph is maps[i]
};

/// The internal hom: graph maps, adjacent when pointwise adjacent.
inline HomGraph hom_graph(const Graph& g, const Graph& h, std::size_t max_maps = 20000) {
  HomGraph r;
  r.maps = enumerate_graph_maps(g, h, max_maps);
  std::vector<std::string> n;
  for (auto const& f : r.maps) n.push_back(map_name(h, f));
  r.graph = Graph(n);
  for (std::size_t a = 0; a < r.maps.size(); ++a)
    for (std::size_t b = a + 1; b < r.maps.size(); ++b) {
      bool adj = true;
      for (int v = 0; v < g.size() && adj; ++v) adj = h.adjacent(r.maps[a][v], r.maps[b][v]);
      if (adj) r.graph.add_edge(static_cast<int>(a), static_cast<int>(b));
    }
  return r;
}

namespace graph_detail {

/// Graph maps pointwise adjacent to f, f itself included.
inline std::vector<GraphMap> hom_neighbors(const Graph& g, const Graph& h, const GraphMap& f) {
  std::vector<GraphMap> out;
  GraphMap cur(g.size(), -1);
  std::function<void(int)> rec = [&](int v) {
    if (v == g.size()) {
      out.push_back(cur);
      return;
    }
    for (int w : h.closed_neighbors(f[v])) {
      bool ok = true;
      for (int u : g.neighbors(v))
        if (u < v && !h.adjacent(cur[u], w)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur[v] = w;
      rec(v + 1);
    }
  };
  rec(0);
  return out;
}

/// Breadth-first search in hom(g, h) from `from`, up to `radius` steps.
/// Returns the predecessor of every reached map.
inline std::map<GraphMap, GraphMap> hom_ball(const Graph& g, const Graph& h, const GraphMap& from, int radius,
                                             const GraphMap* stop = nullptr, std::size_t max_states = 500000) {
  std::map<GraphMap, GraphMap> parent;
  parent[from] = from;
  std::vector<GraphMap> layer{from};
  for (int d = 0; d < radius && !layer.empty(); ++d) {
    if (stop && parent.count(*stop)) break;
    std::vector<GraphMap> next;
    for (auto const& f : layer)
      for (auto& n : hom_neighbors(g, h, f))
        if (parent.emplace(n, f).second) {
          next.push_back(n);
          if (parent.size() > max_states) throw BoundError("homotopy search visited more than " + std::to_string(max_states) + " maps");
        }
    layer = std::move(next);
  }
  return parent;
}

/// The path from `to` back to the root of the ball.
inline std::vector<GraphMap> path_to_root(const std::map<GraphMap, GraphMap>& parent, GraphMap to) {
  std::vector<GraphMap> p{to};
  while (parent.at(to) != to) {
    to = parent.at(to);
    p.push_back(to);
  }
  return p;
}

}  // namespace graph_detail

/// A homotopy G box I_m -> H given by its m+1 stages.
struct HomotopyResult {
  bool found = false;
  int max_len = 0;
  std::vector<GraphMap> stages;  // stages.front() = f, stages.back() = g
  int length() const { return static_cast<int>(stages.size()) - 1; }
};

/// A shortest homotopy from f to g, or exhaustion at max_len.
inline HomotopyResult homotopy_search(const Graph& g, const Graph& h, const GraphMap& f, const GraphMap& f2, int max_len) {
  if (!is_graph_map(g, h, f) || !is_graph_map(g, h, f2)) throw InputError("homotopy search needs two graph maps");
  HomotopyResult r;
  r.max_len = max_len;
  auto parent = graph_detail::hom_ball(g, h, f2, max_len, &f);
  if (!parent.count(f)) return r;
  r.found = true;
  r.stages = graph_detail::path_to_root(parent, f);
  return r;
}

/// The homotopy as a graph map G box I_m -> H, in box_product numbering.
inline GraphMap homotopy_as_map(const Graph& g, const HomotopyResult& a) {
  const int m = a.length();
  GraphMap r(static_cast<std::size_t>(g.size()) * (m + 1));
  for (int v = 0; v < g.size(); ++v)
    for (int t = 0; t <= m; ++t) r[v * (m + 1) + t] = a.stages[t][v];
  return r;
}

struct EquivalenceResult {
  bool found = false;
  int bound = 0;
  GraphMap f, g;          // f: G -> H, g: H -> G
  HomotopyResult alpha;  // g f ~ id
  HomotopyResult beta;   // f g ~ id
};

/// Searches all map pairs for homotopies of length <= bound and returns a
/// pair minimising the longer of the two homotopies.
inline EquivalenceResult is_homotopy_equiv_search(const Graph& g, const Graph& h, int bound, std::size_t max_maps = 20000) {
  using graph_detail::hom_ball;
  EquivalenceResult r;
  r.bound = bound;
  auto gh = enumerate_graph_maps(g, h, max_maps);
  auto hg = enumerate_graph_maps(h, g, max_maps);
  auto ball_g = hom_ball(g, g, identity_map(g), bound);
  auto ball_h = hom_ball(h, h, identity_map(h), bound);
  auto depth = [](const std::map<GraphMap, GraphMap>& parent, const GraphMap& f) {
    return static_cast<int>(graph_detail::path_to_root(parent, f).size()) - 1;
  };
  int best = bound + 1;
  for (auto const& f : gh)
    for (auto const& k : hg) {
      auto kf = compose(k, f);
      auto it = ball_g.find(kf);
      if (it == ball_g.end()) continue;
      auto fk = compose(f, k);
      if (!ball_h.count(fk)) continue;
      int d = std::max(depth(ball_g, kf), depth(ball_h, fk));
      if (d >= best) continue;
      best = d;
      r.found = true;
      r.f = f;
      r.g = k;
      r.alpha.found = r.beta.found = true;
      r.alpha.max_len = r.beta.max_len = bound;
      r.alpha.stages = graph_detail::path_to_root(ball_g, kf);
      r.beta.stages = graph_detail::path_to_root(ball_h, fk);
      if (best == 0) return r;
    }
  return r;
}

}  // namespace ff

#endif
