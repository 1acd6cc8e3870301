#ifndef FRACTION_FORGE_LOCALIZE_GZ_HPP
#define FRACTION_FORGE_LOCALIZE_GZ_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fraction_forge/fractions/checks.hpp"

namespace ff {

/// A cospan x -f-> y' <-w- y with w marked.
struct Cospan {
  int f = -1;
  int w = -1;
  bool operator==(const Cospan&) const = default;
};

/// The cospans from x to y and their classes.
struct FractionHom {
  int source = -1;
  int target = -1;
  std::vector<Cospan> cospans;
  std::vector<int> class_of;        // per cospan
  std::vector<int> representative;  // per class, index into cospans

  int size() const { return static_cast<int>(representative.size()); }

  int find(const Cospan& c) const {
    for (std::size_t i = 0; i < cospans.size(); ++i)
      if (cospans[i] == c) return class_of[i];
    return -1;
  }
};

enum class CompletionOrder { First, Last };

/// The category of fractions. For side L the cospans live in `work`,
/// which is the input; for side R `work` is the opposite of the input and
/// `cat` is the opposite of the left fractions of `work`, so a morphism
/// x -> y is a class of spans x <- x' -> y read as cospans in `work`.
struct Fractions {
  Side side = Side::L;
  MarkedCategory work;
  FinCategory cat;
  std::vector<int> functor;                      // input morphism -> morphism of cat
  std::vector<std::vector<FractionHom>> homs;    // homs[x][y] in `work`
  std::vector<std::pair<std::pair<int, int>, int>> class_of_morphism;  // morphism of cat -> ((x, y), class) in `work`
  std::vector<std::vector<std::vector<int>>> morphism_of_class;        // [x][y][class] -> morphism of cat

  /// Morphism of `cat` given by the class of a cospan in `work`.
  int morphism(int x, int y, const Cospan& c) const {
    int k = homs[x][y].find(c);
    return k < 0 ? -1 : morphism_of_class[x][y][k];
  }
};

namespace gz_detail {

inline std::vector<std::pair<int, int>> completions(const MarkedCategory& c, int g, int w) {
  // (g', w') with g' o w = w' o g, w' marked
  const FinCategory& k = c.cat;
  std::vector<std::pair<int, int>> r;
  for (int wp : k.out_of(k.cod(g))) {
    if (!c.is_marked(wp)) continue;
    for (int gp : k.hom(k.cod(w), k.cod(wp)))
      if (k.comp[gp][w] == k.comp[wp][g]) r.push_back({gp, wp});
  }
  return r;
}

inline FractionHom fraction_hom(const MarkedCategory& c, int x, int y) {
  const FinCategory& k = c.cat;
  FractionHom h;
  h.source = x;
  h.target = y;
  for (int w : k.out_of(y)) {
    if (!c.is_marked(w)) continue;
    for (int f : k.hom(x, k.cod(w))) h.cospans.push_back({f, w});
  }
  std::sort(h.cospans.begin(), h.cospans.end(),
            [](const Cospan& a, const Cospan& b) { return std::pair(a.f, a.w) < std::pair(b.f, b.w); });
  const int n = static_cast<int>(h.cospans.size());
  UnionFind uf(n);
  // (f, w) ~ (g, v) when a f = b g and a w = b v is marked
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (uf.find(i) == uf.find(j)) continue;
      auto [f, w] = h.cospans[i];
      auto [g, v] = h.cospans[j];
      bool rel = false;
      for (int a : k.out_of(k.cod(f))) {
        for (int b : k.hom(k.cod(g), k.cod(a))) {
          int aw = k.comp[a][w];
          if (k.comp[a][f] == k.comp[b][g] && aw == k.comp[b][v] && c.is_marked(aw)) {
            rel = true;
            break;
          }
        }
        if (rel) break;
      }
      if (rel) uf.unite(i, j);
    }
  h.class_of.assign(n, -1);
  std::map<int, int> root_class;
  for (int i = 0; i < n; ++i) {
    int r = uf.find(i);
    auto it = root_class.find(r);
    if (it == root_class.end()) {
      it = root_class.emplace(r, h.size()).first;
      h.representative.push_back(i);
    }
    h.class_of[i] = it->second;
  }
  return h;
}

inline std::string class_name(const MarkedCategory& c, const FractionHom& h, int cls) {
  const FinCategory& k = c.cat;
  // prefer a cospan (f, id)
  for (std::size_t i = 0; i < h.cospans.size(); ++i)
    if (h.class_of[i] == cls && k.is_identity(h.cospans[i].w)) return k.morphisms[h.cospans[i].f].name;
  const Cospan& r = h.cospans[h.representative[cls]];
  return "(" + k.morphisms[r.f].name + "," + k.morphisms[r.w].name + ")";
}

inline Fractions left(const MarkedCategory& c, CompletionOrder order) {
  auto v = check_clf_classical(c);
  if (!v.ok) {
    std::string w;
    for (auto const& s : v.witness) w += (w.empty() ? "" : ", ") + s;
    throw PreconditionError("calculus of left fractions fails at condition " + v.failed + " (" + w + ")");
  }
  const FinCategory& k = c.cat;
  const int n = k.num_objects();
  Fractions fr;
  fr.side = Side::L;
  fr.work = c;
  fr.homs.assign(n, std::vector<FractionHom>(n));
  fr.morphism_of_class.assign(n, std::vector<std::vector<int>>(n));
  fr.cat.objects = k.objects;
  fr.cat.identity.assign(n, -1);
  std::map<std::string, int> used;
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      fr.homs[x][y] = fraction_hom(c, x, y);
      const FractionHom& h = fr.homs[x][y];
      for (int cls = 0; cls < h.size(); ++cls) {
        std::string nm = class_name(c, h, cls);
        int dup = used[nm]++;
        if (dup > 0) nm += "#" + std::to_string(dup);
        fr.morphism_of_class[x][y].push_back(fr.cat.num_morphisms());
        fr.class_of_morphism.push_back({{x, y}, cls});
        fr.cat.morphisms.push_back({nm, x, y});
      }
    }
  for (int x = 0; x < n; ++x) fr.cat.identity[x] = fr.morphism(x, x, {k.identity[x], k.identity[x]});
  const int m = fr.cat.num_morphisms();
  fr.cat.comp.assign(m, std::vector<int>(m, -1));
  for (int p = 0; p < m; ++p)
    for (int q = 0; q < m; ++q) {
      auto [xy, cp] = fr.class_of_morphism[p];
      auto [yz, cq] = fr.class_of_morphism[q];
      if (xy.second != yz.first) continue;
      const Cospan a = fr.homs[xy.first][xy.second].cospans[fr.homs[xy.first][xy.second].representative[cp]];
      const Cospan b = fr.homs[yz.first][yz.second].cospans[fr.homs[yz.first][yz.second].representative[cq]];
      auto comps = completions(c, b.f, a.w);
      if (comps.empty()) throw InvariantError("no completion of a marked span");
      auto [gp, wp] = order == CompletionOrder::First ? comps.front() : comps.back();
      int r = fr.morphism(xy.first, yz.second, {k.comp[gp][a.f], k.comp[wp][b.w]});
      if (r < 0) throw InvariantError("composite cospan is not a fraction");
      fr.cat.comp[q][p] = r;
    }
  fr.cat.validate();
  fr.functor.resize(k.num_morphisms());
  for (int f = 0; f < k.num_morphisms(); ++f)
    fr.functor[f] = fr.morphism(k.dom(f), k.cod(f), {f, k.identity[k.cod(f)]});
  for (int f = 0; f < k.num_morphisms(); ++f) {
    for (int g : k.out_of(k.cod(f)))
      if (fr.cat.comp[fr.functor[g]][fr.functor[f]] != fr.functor[k.comp[g][f]])
        throw InvariantError("the canonical functor does not preserve composition");
    if (c.is_marked(f) && !fr.cat.is_iso(fr.functor[f]))
      throw InvariantError("marked morphism " + k.morphisms[f].name + " is not inverted");
  }
  return fr;
}

}  // namespace gz_detail

/// C W^-1 by classes of cospans. Requires the classical left fraction
/// conditions.
inline Fractions gz_left_fractions(const MarkedCategory& c, CompletionOrder order = CompletionOrder::First) {
  return gz_detail::left(c, order);
}

/// W^-1 C as the opposite of the left fractions of the opposite.
inline Fractions gz_right_fractions(const MarkedCategory& c, CompletionOrder order = CompletionOrder::First) {
  Fractions fr = gz_detail::left(c.opposite(), order);
  fr.side = Side::R;
  fr.cat = fr.cat.opposite();
  return fr;
}

inline Fractions gz_fractions(const MarkedCategory& c, Side side, CompletionOrder order = CompletionOrder::First) {
  return side == Side::L ? gz_left_fractions(c, order) : gz_right_fractions(c, order);
}

/// First composite that depends on the chosen representatives or span
/// completion, as a description; nullopt when composition is well defined.
inline std::optional<std::string> gz_composition_conflict(const Fractions& fr) {
  const MarkedCategory& c = fr.work;
  const FinCategory& k = c.cat;
  const int n = k.num_objects();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        const FractionHom& h1 = fr.homs[x][y];
        const FractionHom& h2 = fr.homs[y][z];
        for (int cp = 0; cp < h1.size(); ++cp)
          for (int cq = 0; cq < h2.size(); ++cq) {
            int want = -1;
            for (std::size_t i = 0; i < h1.cospans.size(); ++i) {
              if (h1.class_of[i] != cp) continue;
              for (std::size_t j = 0; j < h2.cospans.size(); ++j) {
                if (h2.class_of[j] != cq) continue;
                const Cospan a = h1.cospans[i], b = h2.cospans[j];
                for (auto [gp, wp] : gz_detail::completions(c, b.f, a.w)) {
                  int r = fr.homs[x][z].find({k.comp[gp][a.f], k.comp[wp][b.w]});
                  if (want < 0) want = r;
                  if (r != want)
                    return "composite of (" + k.morphisms[a.f].name + "," + k.morphisms[a.w].name + ") and (" +
                           k.morphisms[b.f].name + "," + k.morphisms[b.w].name + ") depends on the completion";
                }
              }
            }
          }
      }
  return std::nullopt;
}

}  // namespace ff

#endif
