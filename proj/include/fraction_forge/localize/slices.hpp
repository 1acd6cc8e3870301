#ifndef FRACTION_FORGE_LOCALIZE_SLICES_HPP
#define FRACTION_FORGE_LOCALIZE_SLICES_HPP

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "fraction_forge/localize/gz.hpp"
#include "fraction_forge/sset/constructions.hpp"
#include "fraction_forge/sset/levels.hpp"

namespace ff {

/// The prism Delta^n x Delta^1 with the cells the slice constructions use.
struct Prism {
  int n = 0;
  Product prod;
  std::unique_ptr<VertexIndex> index;
  Simplex top;                    // Delta^n x {1}
  std::vector<Simplex> vertical;  // (i,0) <= (i,1)
  std::vector<char> bottom;       // per vertex: lies on Delta^n x {0}
  Simplex top_edge;               // (0,1) <= (1,1), n >= 1

  int vertex(int i, int e) const {
    for (int v = 0; v < static_cast<int>(prod.sset.size(0)); ++v)
      if (prod.pairs[0][v].first.cell == i && prod.pairs[0][v].second.cell == e) return v;
    return -1;
  }
};

inline const Prism& prism(int n) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<Prism>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;
  if (n < 0 || n > 3) throw BoundError("prisms are limited to n <= 3");
  auto p = std::make_unique<Prism>();
  p->n = n;
  p->prod = product(standard_simplex(n), standard_simplex(1));
  p->index = std::make_unique<VertexIndex>(p->prod.sset);
  const uint32_t full = n == 0 ? 0u : (1u << n) - 1u;
  p->top = p->prod.find(Simplex{n, 0, 0}, Simplex{n, full, 1});
  for (int i = 0; i <= n; ++i) p->vertical.push_back(p->prod.find(Simplex{1, 1u, i}, Simplex{1, 0, 0}));
  for (int v = 0; v < static_cast<int>(p->prod.sset.size(0)); ++v)
    p->bottom.push_back(p->prod.pairs[0][v].second.cell == 0 ? 1 : 0);
  if (n >= 1) p->top_edge = p->prod.find(standard_simplex(n).edge(Simplex{n, 0, 0}, 0, 1), Simplex{1, 1u, 1});
  return *cache.emplace(n, std::move(p)).first->second;
}

/// theta x id : prism(src) -> prism(tgt).
inline SMap prism_map(const Mono& th) {
  const Prism& a = prism(th.src);
  const Prism& b = prism(th.tgt);
  return map_from_vertices(a.prod.sset, *b.index, [&](int v) {
    auto [i, e] = a.prod.pairs[0][v];
    return b.vertex(th(i.cell), e.cell);
  });
}

/// A slice under a vertex, levels 0..bound: maps Delta^n x Delta^1 -> X
/// constant at the apex on Delta^n x {0}. In the marked slice every
/// vertical edge is marked. An edge is marked when its top edge is.
struct SliceLevels {
  int apex = -1;
  bool marked_verticals = false;
  int bound = 0;
  std::vector<std::vector<SMap>> maps;
  std::vector<std::vector<Simplex>> proj;  // restriction to Delta^n x {1}
  Levels levels;
  LevelsSSet ez;
  MarkedSSet marked;

  std::size_t size(int n) const { return maps.at(n).size(); }
};

namespace slice_detail {

// Marking of the Eilenberg-Zilber presentation from a per-element rule.
template <class F>
MarkedSSet mark_levels(const Levels& lv, const LevelsSSet& ez, F&& marked_element) {
  std::vector<char> mk(lv.bound >= 1 ? ez.sset.size(1) : 0, 0);
  for (int e = 0; lv.bound >= 1 && e < static_cast<int>(lv.size(1)); ++e) {
    const Simplex& s = ez.ez[1][e];
    if (!s.degenerate()) mk[s.cell] = marked_element(e) ? 1 : 0;
  }
  return MarkedSSet(ez.sset, std::move(mk));
}

inline std::string element_name(const MarkedSSet& x, const Prism& p, const SMap& u) {
  std::string s;
  for (std::size_t i = 0; i < p.vertical.size(); ++i) s += (i ? "," : "") + x.sset.describe(image(u, p.vertical[i]));
  return p.n == 0 ? s : "(" + s + ")";
}

inline void name_levels(Levels& lv, const std::vector<std::vector<std::string>>& raw) {
  for (std::size_t n = 0; n < raw.size(); ++n) {
    std::map<std::string, int> seen;
    for (auto const& s : raw[n]) {
      int c = seen[s]++;
      lv.names[n].push_back(c == 0 ? s : s + "#" + std::to_string(c));
    }
  }
}

inline void size_levels(Levels& lv, int bound) {
  lv.bound = bound;
  lv.names.assign(bound + 1, {});
  lv.face.assign(bound + 1, {});
  lv.degen.assign(bound + 1, {});
}

}  // namespace slice_detail

inline SliceLevels slice_under(const MarkedSSet& x, int apex, bool marked_verticals, int bound = 2) {
  if (bound < 0 || bound > 2) throw BoundError("slice levels are limited to 0..2");
  if (x.sset.dim_bound() < bound + 1) throw BoundError("slice level n needs the input up to dimension n + 1");
  if (apex < 0 || apex >= static_cast<int>(x.sset.size(0))) throw InputError("apex is not a vertex");
  SliceLevels s;
  s.apex = apex;
  s.marked_verticals = marked_verticals;
  s.bound = bound;
  s.maps.resize(bound + 1);
  s.proj.resize(bound + 1);
  std::vector<std::unordered_map<SMap, int, SMapHash>> index(bound + 1);
  std::vector<std::vector<std::string>> raw(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    const Prism& p = prism(n);
    const SSet& ps = p.prod.sset;
    std::vector<char> mk(ps.size(1), 0);
    if (marked_verticals)
      for (auto const& v : p.vertical) mk[v.cell] = 1;
    const MarkedSSet source(ps, std::move(mk));
    MapEnumerator e = marked_enumerator(source, x);
    for (int d = 0; d <= ps.dim_bound(); ++d)
      for (int c = 0; c < static_cast<int>(ps.size(d)); ++c) {
        const Simplex& second = p.prod.pairs[d][c].second;
        if (second.cell != 0 || second.cell_dim() != 0) continue;
        e.fix(d, c, Simplex{d, d == 0 ? 0u : (1u << d) - 1u, apex});
      }
    s.maps[n] = e.all();
    for (int i = 0; i < static_cast<int>(s.maps[n].size()); ++i) {
      index[n].emplace(s.maps[n][i], i);
      s.proj[n].push_back(image(s.maps[n][i], p.top));
      raw[n].push_back(slice_detail::element_name(x, p, s.maps[n][i]));
    }
  }
  Levels& lv = s.levels;
  slice_detail::size_levels(lv, bound);
  slice_detail::name_levels(lv, raw);
  auto find = [&](int n, const SMap& f) {
    auto it = index[n].find(f);
    if (it == index[n].end()) throw InvariantError("slice is not closed under simplicial operators");
    return it->second;
  };
  for (int n = 1; n <= bound; ++n) {
    lv.face[n].resize(s.size(n));
    for (int i = 0; i <= n; ++i) {
      SMap d = prism_map(Mono::coface(n, i));
      for (int e = 0; e < static_cast<int>(s.size(n)); ++e) lv.face[n][e].push_back(find(n - 1, compose(s.maps[n][e], d)));
    }
  }
  for (int n = 0; n < bound; ++n) {
    lv.degen[n].resize(s.size(n));
    for (int j = 0; j <= n; ++j) {
      SMap sg = prism_map(Mono::codegeneracy(n, j));
      for (int e = 0; e < static_cast<int>(s.size(n)); ++e)
        lv.degen[n][e].push_back(find(n + 1, compose(s.maps[n][e], sg)));
    }
  }
  check_levels(lv);
  s.ez = to_sset(lv);
  const Prism& p1 = prism(std::min(bound, 1));
  s.marked = slice_detail::mark_levels(lv, s.ez, [&](int e) { return x.is_marked(image(s.maps[1][e], p1.top_edge)); });
  return s;
}

/// The marked slice under x.
inline SliceLevels marked_slice_under(const MarkedSSet& x, int apex, int bound = 2) {
  return slice_under(x, apex, true, bound);
}

/// The fat slice under x with the marking pulled back along the projection.
inline SliceLevels fat_slice_under(const MarkedSSet& x, int apex, int bound = 2) {
  return slice_under(x, apex, false, bound);
}

/// Levels with faces and degeneracies reversed.
inline Levels opposite(const Levels& lv) {
  Levels op = lv;
  for (int n = 1; n <= lv.bound; ++n)
    for (auto& f : op.face[n]) std::reverse(f.begin(), f.end());
  for (int n = 0; n < lv.bound; ++n)
    for (auto& d : op.degen[n]) std::reverse(d.begin(), d.end());
  return op;
}

/// The marked slice over x, as the opposite of the slice under x in X^op.
/// `proj` still lists simplices of X^op.
inline SliceLevels marked_slice_over(const MarkedSSet& x, int apex, int bound = 2) {
  SliceLevels s = marked_slice_under(opposite(x), apex, bound);
  s.levels = opposite(s.levels);
  s.ez = to_sset(s.levels);
  const Prism& p1 = prism(std::min(bound, 1));
  MarkedSSet xo = opposite(x);
  s.marked = slice_detail::mark_levels(s.levels, s.ez, [&](int e) { return xo.is_marked(image(s.maps[1][e], p1.top_edge)); });
  return s;
}

/// Simplicial set of left fractions from x to y: the pullback of the fat
/// slice under x and the marked slice under y over X. Elements of level n
/// are pairs (a, b) of slice elements with the same projection.
struct FractionSpace {
  SliceLevels under_x;
  SliceLevels under_y;
  std::vector<std::vector<std::pair<int, int>>> pairs;
  Levels levels;
  LevelsSSet ez;
  MarkedSSet marked;

  std::size_t size(int n) const { return pairs.at(n).size(); }
};

inline FractionSpace fraction_space_LF(const MarkedSSet& x, int a, int b, int bound = 1) {
  FractionSpace fs;
  fs.under_x = fat_slice_under(x, a, bound);
  fs.under_y = marked_slice_under(x, b, bound);
  fs.pairs.resize(bound + 1);
  std::vector<std::map<std::pair<int, int>, int>> index(bound + 1);
  std::vector<std::vector<std::string>> raw(bound + 1);
  for (int n = 0; n <= bound; ++n) {
    std::map<Simplex, std::vector<int>> by_proj;
    for (int j = 0; j < static_cast<int>(fs.under_y.size(n)); ++j) by_proj[fs.under_y.proj[n][j]].push_back(j);
    for (int i = 0; i < static_cast<int>(fs.under_x.size(n)); ++i) {
      auto it = by_proj.find(fs.under_x.proj[n][i]);
      if (it == by_proj.end()) continue;
      for (int j : it->second) {
        index[n][{i, j}] = static_cast<int>(fs.pairs[n].size());
        fs.pairs[n].push_back({i, j});
        raw[n].push_back(fs.under_x.levels.names[n][i] + "|" + fs.under_y.levels.names[n][j]);
      }
    }
  }
  Levels& lv = fs.levels;
  slice_detail::size_levels(lv, bound);
  slice_detail::name_levels(lv, raw);
  auto find = [&](int n, int i, int j) {
    auto it = index[n].find({i, j});
    if (it == index[n].end()) throw InvariantError("fraction space is not closed under simplicial operators");
    return it->second;
  };
  for (int n = 1; n <= bound; ++n)
    for (auto [i, j] : fs.pairs[n]) {
      std::vector<int> f;
      for (int k = 0; k <= n; ++k) f.push_back(find(n - 1, fs.under_x.levels.face[n][i][k], fs.under_y.levels.face[n][j][k]));
      lv.face[n].push_back(std::move(f));
    }
  for (int n = 0; n < bound; ++n)
    for (auto [i, j] : fs.pairs[n]) {
      std::vector<int> d;
      for (int k = 0; k <= n; ++k) d.push_back(find(n + 1, fs.under_x.levels.degen[n][i][k], fs.under_y.levels.degen[n][j][k]));
      lv.degen[n].push_back(std::move(d));
    }
  check_levels(lv);
  fs.ez = to_sset(lv);
  const Prism& p1 = prism(std::min(bound, 1));
  fs.marked = slice_detail::mark_levels(lv, fs.ez, [&](int e) {
    return x.is_marked(image(fs.under_y.maps[1][fs.pairs[1][e].second], p1.top_edge));
  });
  return fs;
}

/// Right fractions from x to y, as the opposite of the left fractions
/// from y to x in X^op.
inline FractionSpace fraction_space_RF(const MarkedSSet& x, int a, int b, int bound = 1) {
  FractionSpace fs = fraction_space_LF(opposite(x), b, a, bound);
  fs.levels = opposite(fs.levels);
  fs.ez = to_sset(fs.levels);
  fs.marked = MarkedSSet(fs.ez.sset, opposite(fs.marked).marked);
  return fs;
}

/// Connected components of a simplicial set along its edges.
inline std::vector<int> components(const SSet& x, int* count = nullptr) {
  UnionFind uf(x.size(0));
  for (int e = 0; x.dim_bound() >= 1 && e < static_cast<int>(x.size(1)); ++e) {
    auto v = x.vertices(x.cell(1, e));
    uf.unite(v[0], v[1]);
  }
  std::vector<int> comp(x.size(0), -1);
  std::map<std::size_t, int> ids;
  for (std::size_t v = 0; v < x.size(0); ++v) {
    auto it = ids.find(uf.find(v));
    if (it == ids.end()) it = ids.emplace(uf.find(v), static_cast<int>(ids.size())).first;
    comp[v] = it->second;
  }
  if (count) *count = static_cast<int>(ids.size());
  return comp;
}

/// pi_0 of the fraction space against the hom of the category of fractions.
struct Pi0Check {
  bool ok = false;
  int components = 0;
  int classes = 0;
  std::vector<int> to_fraction;  // component -> fraction class
  std::string detail;
};

inline Pi0Check pi0_mapping_check(const MarkedCategory& c, int x, int y, Side side = Side::L) {
  auto v = side == Side::L ? check_proper_clf(c) : check_proper_crf(c);
  if (!v.ok) throw PreconditionError("proper calculus of fractions fails at condition " + v.failed);
  MarkedNerve nv = marked_nerve(c, 2);
  MarkedSSet xs = side == Side::L ? nv.marked : opposite(nv.marked);
  const int a = side == Side::L ? x : y;
  const int b = side == Side::L ? y : x;
  FractionSpace fs = fraction_space_LF(xs, a, b, 1);
  Fractions fr = gz_fractions(c, side);
  const FractionHom& h = fr.homs[a][b];
  auto morphism_of = [&](const Simplex& e) {
    return e.degenerate() ? c.cat.identity[e.cell] : nv.nerve.morphism_of_edge[e.cell];
  };
  Pi0Check r;
  // the level-0 elements index the vertices of ez in order
  std::vector<int> vertex_element(fs.ez.sset.size(0), -1);
  for (int e = 0; e < static_cast<int>(fs.size(0)); ++e) vertex_element[fs.ez.ez[0][e].cell] = e;
  auto comp = components(fs.ez.sset, &r.components);
  r.classes = h.size();
  r.to_fraction.assign(r.components, -1);
  const Prism& p0 = prism(0);
  for (int vtx = 0; vtx < static_cast<int>(comp.size()); ++vtx) {
    auto [i, j] = fs.pairs[0][vertex_element[vtx]];
    int f = morphism_of(image(fs.under_x.maps[0][i], p0.vertical[0]));
    int w = morphism_of(image(fs.under_y.maps[0][j], p0.vertical[0]));
    int cls = h.find({f, w});
    int& slot = r.to_fraction[comp[vtx]];
    if (cls < 0 || (slot >= 0 && slot != cls)) {
      r.detail = "component " + std::to_string(comp[vtx]) + " meets two fraction classes";
      return r;
    }
    slot = cls;
  }
  std::vector<char> hit(h.size(), 0);
  for (int t : r.to_fraction) {
    if (hit[t]) {
      r.detail = "two components map to one fraction class";
      return r;
    }
    hit[t] = 1;
  }
  if (r.components != h.size()) {
    r.detail = std::to_string(r.components) + " components against " + std::to_string(h.size()) + " fraction classes";
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace ff

#endif
