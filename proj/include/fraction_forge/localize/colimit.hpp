#ifndef FRACTION_FORGE_LOCALIZE_COLIMIT_HPP
#define FRACTION_FORGE_LOCALIZE_COLIMIT_HPP

#include <map>
#include <vector>

#include "fraction_forge/localize/gz.hpp"

namespace ff {

/// colim over y' in the marked coslice y/W of C(x, y'), as a quotient of
/// the disjoint union. Elements are (w : y -> y' marked, f : x -> y').
struct ColimitHom {
  int source = -1;
  int target = -1;
  std::vector<std::pair<int, int>> elements;
  std::vector<int> class_of;
  int classes = 0;
};

inline ColimitHom hom_via_colimit(const MarkedCategory& c, int x, int y) {
  auto v = check_clf_classical(c);
  if (!v.ok) throw PreconditionError("calculus of left fractions fails at condition " + v.failed);
  const FinCategory& k = c.cat;
  ColimitHom r;
  r.source = x;
  r.target = y;
  std::map<std::pair<int, int>, int> index;
  for (int w : k.out_of(y)) {
    if (!c.is_marked(w)) continue;
    for (int f : k.hom(x, k.cod(w))) {
      index[{w, f}] = static_cast<int>(r.elements.size());
      r.elements.push_back({w, f});
    }
  }
  // a morphism a : (y', w) -> (y'', a w) of the coslice moves f to a f
  UnionFind uf(r.elements.size());
  for (auto const& [w, f] : r.elements)
    for (int a : k.out_of(k.cod(w))) {
      int aw = k.comp[a][w];
      if (!c.is_marked(aw)) continue;
      uf.unite(index.at({w, f}), index.at({aw, k.comp[a][f]}));
    }
  std::map<std::size_t, int> cls;
  for (std::size_t i = 0; i < r.elements.size(); ++i) {
    auto it = cls.find(uf.find(i));
    if (it == cls.end()) it = cls.emplace(uf.find(i), r.classes++).first;
    r.class_of.push_back(it->second);
  }
  return r;
}

/// The map colimit class -> fraction class induced by (w, f) -> (f, w).
/// `ok` when it is well defined and bijective.
struct ColimitComparison {
  bool ok = false;
  std::vector<int> to_fraction;
  std::string detail;
};

inline ColimitComparison compare_colimit_hom(const ColimitHom& col, const FractionHom& h) {
  ColimitComparison r;
  r.to_fraction.assign(col.classes, -1);
  for (std::size_t i = 0; i < col.elements.size(); ++i) {
    auto [w, f] = col.elements[i];
    int t = h.find({f, w});
    int& slot = r.to_fraction[col.class_of[i]];
    if (t < 0 || (slot >= 0 && slot != t)) {
      r.detail = "colimit class " + std::to_string(col.class_of[i]) + " meets two fraction classes";
      return r;
    }
    slot = t;
  }
  std::vector<char> hit(h.size(), 0);
  for (int t : r.to_fraction) {
    if (t < 0 || hit[t]) {
      r.detail = "not injective";
      return r;
    }
    hit[t] = 1;
  }
  if (col.classes != h.size()) {
    r.detail = "not surjective: " + std::to_string(col.classes) + " colimit classes, " + std::to_string(h.size()) +
               " fraction classes";
    return r;
  }
  r.ok = true;
  return r;
}

}  // namespace ff

#endif
