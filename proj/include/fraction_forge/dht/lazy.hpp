#ifndef FRACTION_FORGE_DHT_LAZY_HPP
#define FRACTION_FORGE_DHT_LAZY_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include "fraction_forge/dht/graph.hpp"

namespace ff {

/// A map from the integer line that is constant outside a finite walk:
/// value walk[m - offset], clamped at both ends. Canonical when the walk
/// does not repeat at either end and a constant map has offset 0.
struct LineMap {
  int offset = 0;
  std::vector<int> walk;

  int at(int m) const { return walk[std::clamp(m - offset, 0, static_cast<int>(walk.size()) - 1)]; }
  int first() const { return offset; }
  int last() const { return offset + static_cast<int>(walk.size()) - 1; }
  /// Stable value towards -infinity and +infinity.
  int start() const { return walk.front(); }
  int end() const { return walk.back(); }

  friend auto operator<=>(const LineMap&, const LineMap&) = default;
};

inline LineMap canonical(LineMap l) {
  if (l.walk.empty()) throw InputError("a line map needs at least one vertex");
  std::size_t lo = 0, hi = l.walk.size() - 1;
  while (lo < hi && l.walk[lo] == l.walk[lo + 1]) ++lo;
  while (hi > lo && l.walk[hi] == l.walk[hi - 1]) --hi;
  LineMap r{l.offset + static_cast<int>(lo), std::vector<int>(l.walk.begin() + lo, l.walk.begin() + hi + 1)};
  if (r.walk.size() == 1) r.offset = 0;
  return r;
}

inline bool is_line_map(const Graph& k, const LineMap& l) {
  if (l.walk.empty()) return false;
  for (std::size_t i = 0; i < l.walk.size(); ++i) {
    if (l.walk[i] < 0 || l.walk[i] >= k.size()) return false;
    if (i && !k.adjacent(l.walk[i - 1], l.walk[i])) return false;
  }
  return true;
}

/// Pointwise adjacency of two line maps.
inline bool line_adjacent(const Graph& k, const LineMap& a, const LineMap& b) {
  const int lo = std::min(a.first(), b.first()), hi = std::max(a.last(), b.last());
  for (int m = lo; m <= hi; ++m)
    if (!k.adjacent(a.at(m), b.at(m))) return false;
  return true;
}

/// Line maps adjacent to l that are constant outside the support of l
/// widened by `slack` on each side. The path graph is infinite; slack
/// bounds the probe.
inline std::vector<LineMap> line_neighbors(const Graph& k, const LineMap& l, int slack) {
  const int lo = l.first() - slack, hi = l.last() + slack;
  std::set<LineMap> out;
  std::vector<int> w(hi - lo + 1);
  std::function<void(int)> rec = [&](int i) {
    if (i == static_cast<int>(w.size())) {
      out.insert(canonical(LineMap{lo, w}));
      return;
    }
    for (int v : k.closed_neighbors(l.at(lo + i))) {
      if (i && !k.adjacent(w[i - 1], v)) continue;
      w[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return {out.begin(), out.end()};
}

inline std::string line_name(const Graph& k, const LineMap& l) {
  std::string s = std::to_string(l.offset) + ":";
  for (std::size_t i = 0; i < l.walk.size(); ++i) s += (i ? "," : "") + k.name(l.walk[i]);
  return s;
}

/// Vertices are finite integer codes in canonical form. Neighbour probes
/// are memoised behind a cache that is written once per key and is safe
/// for concurrent readers.
class LazyGraph {
 public:
  using Vertex = std::vector<int>;
  using NeighborFn = std::function<std::vector<Vertex>(const Vertex&, int)>;

  LazyGraph(std::function<Vertex(const Vertex&)> canon, std::function<bool(const Vertex&, const Vertex&)> adj,
            NeighborFn nbrs, std::function<std::string(const Vertex&)> describe)
      : canon_(std::move(canon)), adj_(std::move(adj)), nbrs_(std::move(nbrs)), describe_(std::move(describe)),
        cache_(std::make_shared<Cache>()) {}

  Vertex canonical(const Vertex& v) const { return canon_(v); }
  bool equal(const Vertex& a, const Vertex& b) const { return canon_(a) == canon_(b); }
  bool adjacent(const Vertex& a, const Vertex& b) const { return adj_(canon_(a), canon_(b)); }
  std::string describe(const Vertex& v) const { return describe_(canon_(v)); }

  /// Neighbours (v itself included) within the given slack.
  std::shared_ptr<const std::vector<Vertex>> neighbors(const Vertex& v, int slack) const {
    auto key = std::make_pair(canon_(v), slack);
    {
      std::shared_lock lock(cache_->mutex);
      auto it = cache_->entries.find(key);
      if (it != cache_->entries.end()) return it->second;
    }
    auto computed = std::make_shared<const std::vector<Vertex>>(nbrs_(key.first, slack));
    std::unique_lock lock(cache_->mutex);
    return cache_->entries.emplace(key, computed).first->second;
  }

  /// Vertices within `radius` steps, each step probed with `slack`.
  std::vector<Vertex> ball(const Vertex& v, int radius, int slack) const {
    std::set<Vertex> seen{canon_(v)};
    std::vector<Vertex> layer{canon_(v)};
    for (int d = 0; d < radius; ++d) {
      std::vector<Vertex> next;
      for (auto const& u : layer)
        for (auto const& w : *neighbors(u, slack))
          if (seen.insert(w).second) next.push_back(w);
      layer = std::move(next);
    }
    return {seen.begin(), seen.end()};
  }

  std::size_t cached_probes() const {
    std::shared_lock lock(cache_->mutex);
    return cache_->entries.size();
  }

 private:
  struct Cache {
    mutable std::shared_mutex mutex;
    std::map<std::pair<Vertex, int>, std::shared_ptr<const std::vector<Vertex>>> entries;
  };

  std::function<Vertex(const Vertex&)> canon_;
  std::function<bool(const Vertex&, const Vertex&)> adj_;
  NeighborFn nbrs_;
  std::function<std::string(const Vertex&)> describe_;
  std::shared_ptr<Cache> cache_;
};

namespace lazy_detail {

/// Appends a line map as [offset, length, walk...].
inline void put(std::vector<int>& out, const LineMap& l) {
  out.push_back(l.offset);
  out.push_back(static_cast<int>(l.walk.size()));
  out.insert(out.end(), l.walk.begin(), l.walk.end());
}

inline LineMap take(const std::vector<int>& in, std::size_t& pos) {
  if (pos + 2 > in.size()) throw InputError("truncated line map code");
  LineMap l;
  l.offset = in[pos];
  const int n = in[pos + 1];
  pos += 2;
  if (n < 1 || pos + n > in.size()) throw InputError("truncated line map code");
  l.walk.assign(in.begin() + pos, in.begin() + pos + n);
  pos += n;
  return l;
}

}  // namespace lazy_detail

/// The path graph of K: stable line maps, adjacent when pointwise adjacent.
/// Code: [offset, length, walk...].
inline LineMap path_vertex(const LazyGraph::Vertex& v) {
  std::size_t pos = 0;
  return lazy_detail::take(v, pos);
}

inline LazyGraph::Vertex path_code(const LineMap& l) {
  LazyGraph::Vertex v;
  lazy_detail::put(v, canonical(l));
  return v;
}

inline LazyGraph path_graph_lazy(const Graph& k) {
  auto K = std::make_shared<const Graph>(k);
  auto canon = [K](const LazyGraph::Vertex& v) {
    LineMap l = path_vertex(v);
    if (!is_line_map(*K, l)) throw InputError("not a walk in the graph");
    return path_code(l);
  };
  auto adj = [K](const LazyGraph::Vertex& a, const LazyGraph::Vertex& b) {
    return line_adjacent(*K, path_vertex(a), path_vertex(b));
  };
  auto nbrs = [K](const LazyGraph::Vertex& v, int slack) {
    std::vector<LazyGraph::Vertex> out;
    for (auto const& l : line_neighbors(*K, path_vertex(v), slack)) out.push_back(path_code(l));
    return out;
  };
  auto describe = [K](const LazyGraph::Vertex& v) { return line_name(*K, path_vertex(v)); };
  return LazyGraph(canon, adj, nbrs, describe);
}

/// A graph map with its endpoints.
struct GraphMorphism {
  Graph source, target;
  GraphMap map;
};

inline void check_morphism(const GraphMorphism& f) {
  if (!is_graph_map(f.source, f.target, f.map)) throw InputError("not a graph map");
}

/// Vertices (k, p, x): p a line map from k to f(x). Code: [x, line map].
struct MappingPathVertex {
  int x;
  LineMap p;
};

inline MappingPathVertex mapping_path_vertex(const LazyGraph::Vertex& v) {
  if (v.empty()) throw InputError("empty vertex code");
  std::size_t pos = 1;
  return {v[0], lazy_detail::take(v, pos)};
}

inline LazyGraph::Vertex mapping_path_code(int x, const LineMap& p) {
  LazyGraph::Vertex v{x};
  lazy_detail::put(v, canonical(p));
  return v;
}

inline LazyGraph double_mapping_path_lazy(const GraphMorphism& f) {
  check_morphism(f);
  auto F = std::make_shared<const GraphMorphism>(f);
  auto canon = [F](const LazyGraph::Vertex& v) {
    auto [x, p] = mapping_path_vertex(v);
    if (x < 0 || x >= F->source.size() || !is_line_map(F->target, p) || p.end() != F->map[x])
      throw InputError("not a vertex of the mapping path graph");
    return mapping_path_code(x, p);
  };
  auto adj = [F](const LazyGraph::Vertex& a, const LazyGraph::Vertex& b) {
    auto va = mapping_path_vertex(a), vb = mapping_path_vertex(b);
    return F->source.adjacent(va.x, vb.x) && line_adjacent(F->target, va.p, vb.p);
  };
  auto nbrs = [F](const LazyGraph::Vertex& v, int slack) {
    auto [x, p] = mapping_path_vertex(v);
    std::vector<LazyGraph::Vertex> out;
    auto lines = line_neighbors(F->target, p, slack);
    for (int x2 : F->source.closed_neighbors(x))
      for (auto const& l : lines)
        if (l.end() == F->map[x2]) out.push_back(mapping_path_code(x2, l));
    std::sort(out.begin(), out.end());
    return out;
  };
  auto describe = [F](const LazyGraph::Vertex& v) {
    auto [x, p] = mapping_path_vertex(v);
    return "(" + F->source.name(x) + "," + line_name(F->target, p) + ")";
  };
  return LazyGraph(canon, adj, nbrs, describe);
}

/// Vertices (x, p1, p2, y) with p1 from k to f(x) and p2 from k to g(y),
/// k the common start. Code: [x, y, p1, p2].
struct PullbackVertex {
  int x, y;
  LineMap p1, p2;
};

inline PullbackVertex pullback_vertex(const LazyGraph::Vertex& v) {
  if (v.size() < 2) throw InputError("short vertex code");
  std::size_t pos = 2;
  PullbackVertex r{v[0], v[1], {}, {}};
  r.p1 = lazy_detail::take(v, pos);
  r.p2 = lazy_detail::take(v, pos);
  return r;
}

inline LazyGraph::Vertex pullback_code(const PullbackVertex& p) {
  LazyGraph::Vertex v{p.x, p.y};
  lazy_detail::put(v, canonical(p.p1));
  lazy_detail::put(v, canonical(p.p2));
  return v;
}

struct PullbackGraph {
  std::shared_ptr<const GraphMorphism> f, g;
  LazyGraph graph;

  int pi_G(const LazyGraph::Vertex& v) const { return pullback_vertex(v).x; }
  int pi_H(const LazyGraph::Vertex& v) const { return pullback_vertex(v).y; }
  int pi_K(const LazyGraph::Vertex& v) const { return pullback_vertex(v).p1.start(); }
  /// The comparison 1-cubes: pi_1 runs from pi_K to f pi_G, pi_2 from
  /// pi_K to g pi_H.
  LineMap pi_1(const LazyGraph::Vertex& v) const { return pullback_vertex(v).p1; }
  LineMap pi_2(const LazyGraph::Vertex& v) const { return pullback_vertex(v).p2; }
};

inline PullbackGraph pullback_graph_lazy(const GraphMorphism& f, const GraphMorphism& g) {
  check_morphism(f);
  check_morphism(g);
  if (!(f.target == g.target)) throw InputError("pullback needs a cospan: the targets differ");
  auto F = std::make_shared<const GraphMorphism>(f);
  auto G = std::make_shared<const GraphMorphism>(g);
  const Graph* k = &F->target;
  auto valid = [F, G, k](const PullbackVertex& p) {
    return p.x >= 0 && p.x < F->source.size() && p.y >= 0 && p.y < G->source.size() && is_line_map(*k, p.p1) &&
           is_line_map(*k, p.p2) && p.p1.start() == p.p2.start() && p.p1.end() == F->map[p.x] && p.p2.end() == G->map[p.y];
  };
  auto canon = [valid](const LazyGraph::Vertex& v) {
    auto p = pullback_vertex(v);
    if (!valid(p)) throw InputError("not a vertex of the pullback graph");
    return pullback_code(p);
  };
  auto adj = [F, G, k](const LazyGraph::Vertex& a, const LazyGraph::Vertex& b) {
    auto pa = pullback_vertex(a), pb = pullback_vertex(b);
    return F->source.adjacent(pa.x, pb.x) && G->source.adjacent(pa.y, pb.y) && line_adjacent(*k, pa.p1, pb.p1) &&
           line_adjacent(*k, pa.p2, pb.p2);
  };
  auto nbrs = [F, G, k](const LazyGraph::Vertex& v, int slack) {
    auto p = pullback_vertex(v);
    auto l1 = line_neighbors(*k, p.p1, slack);
    auto l2 = line_neighbors(*k, p.p2, slack);
    std::vector<LazyGraph::Vertex> out;
    for (int x : F->source.closed_neighbors(p.x))
      for (auto const& a : l1) {
        if (a.end() != F->map[x]) continue;
        for (int y : G->source.closed_neighbors(p.y))
          for (auto const& b : l2)
            if (b.end() == G->map[y] && b.start() == a.start()) out.push_back(pullback_code({x, y, a, b}));
      }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto describe = [F, G, k](const LazyGraph::Vertex& v) {
    auto p = pullback_vertex(v);
    return "(" + F->source.name(p.x) + "," + line_name(*k, p.p1) + "," + line_name(*k, p.p2) + "," + G->source.name(p.y) + ")";
  };
  return PullbackGraph{F, G, LazyGraph(canon, adj, nbrs, describe)};
}

}  // namespace ff

#endif
