#ifndef FRACTION_FORGE_LOCALIZE_COMPARE_HPP
#define FRACTION_FORGE_LOCALIZE_COMPARE_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fraction_forge/exfunctor/ex.hpp"
#include "fraction_forge/localize/gz.hpp"

namespace ff {

/// An isomorphism a -> b that is a given bijection on objects and agrees
/// with the prescribed morphism pairs, found by propagation through
/// composites and then backtracking. Returns the morphism map.
inline std::optional<std::vector<int>> find_category_iso(const FinCategory& a, const FinCategory& b,
                                                         const std::vector<int>& on_objects,
                                                         const std::vector<std::pair<int, int>>& forced) {
  if (a.num_objects() != b.num_objects() || a.num_morphisms() != b.num_morphisms()) return std::nullopt;
  const int n = a.num_objects();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a.hom(x, y).size() != b.hom(on_objects[x], on_objects[y]).size()) return std::nullopt;
  const int m = a.num_morphisms();
  std::vector<int> fw(m, -1), bw(m, -1);
  std::vector<std::pair<int, int>> trail;
  auto set = [&](int f, int g) {
    if (fw[f] >= 0 || bw[g] >= 0) return fw[f] == g && bw[g] == f;
    if (b.dom(g) != on_objects[a.dom(f)] || b.cod(g) != on_objects[a.cod(f)]) return false;
    fw[f] = g;
    bw[g] = f;
    trail.push_back({f, g});
    return true;
  };
  auto undo = [&](std::size_t mark) {
    while (trail.size() > mark) {
      auto [f, g] = trail.back();
      trail.pop_back();
      fw[f] = -1;
      bw[g] = -1;
    }
  };
  auto propagate = [&]() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int f = 0; f < m; ++f) {
        if (fw[f] < 0) continue;
        for (int g : a.out_of(a.cod(f))) {
          if (fw[g] < 0) continue;
          int gf = a.comp[g][f];
          int img = b.comp[fw[g]][fw[f]];
          if (fw[gf] == img) continue;
          if (!set(gf, img)) return false;
          changed = true;
        }
      }
    }
    return true;
  };
  for (int x = 0; x < n; ++x)
    if (!set(a.identity[x], b.identity[on_objects[x]])) return std::nullopt;
  for (auto [f, g] : forced)
    if (!set(f, g)) return std::nullopt;
  if (!propagate()) return std::nullopt;
  std::function<bool()> search = [&]() -> bool {
    int f = -1;
    for (int i = 0; i < m && f < 0; ++i)
      if (fw[i] < 0) f = i;
    if (f < 0) {
      for (int p = 0; p < m; ++p)
        for (int q : a.out_of(a.cod(p)))
          if (b.comp[fw[q]][fw[p]] != fw[a.comp[q][p]]) return false;
      return true;
    }
    for (int g : b.hom(on_objects[a.dom(f)], on_objects[a.cod(f)])) {
      if (bw[g] >= 0) continue;
      std::size_t mark = trail.size();
      if (set(f, g) && propagate() && search()) return true;
      undo(mark);
    }
    return false;
  };
  if (!search()) return std::nullopt;
  return fw;
}

/// Ho(Ex_+(N C, W)) against C W^-1.
struct LocalizationComparison {
  bool iso = false;
  std::string detail;
  Fractions gz;
  HoCategory ho;
  std::vector<int> ho_functor;  // morphism of C -> morphism of Ho
  std::vector<int> ho_to_gz;    // morphism of Ho -> morphism of C W^-1
  std::vector<std::vector<std::pair<int, int>>> hom_sizes;  // [x][y] = (|Ho(x,y)|, |C W^-1(x,y)|)
};

inline LocalizationComparison compare_localizations(const MarkedCategory& c) {
  auto v = check_proper_clf(c);
  if (!v.ok) throw PreconditionError("proper calculus of left fractions fails at condition " + v.failed);
  LocalizationComparison r;
  r.gz = gz_left_fractions(c);
  MarkedNerve nv = marked_nerve(c, 2);
  ExLevels ex = ex_plus(nv.marked, 2);
  r.ho = ho_of_qcat(ex.sset());
  auto unit = ex_unit(nv.marked, ex);
  const FinCategory& k = c.cat;
  auto edges = nv.marked.sset.all_simplices(1);
  auto edge_of = [&](int f) {
    Simplex e = k.is_identity(f) ? Simplex{1, 1u, k.dom(f)} : Simplex{1, 0, nv.nerve.edge_of_morphism[f]};
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (edges[i] == e) return static_cast<int>(i);
    throw InvariantError("morphism without an edge in the nerve");
  };
  std::vector<int> on_objects(k.num_objects(), -1);
  for (int x = 0; x < k.num_objects(); ++x) {
    int o = r.ho.cat.find_object(k.objects[x]);
    if (o < 0) throw InvariantError("object " + k.objects[x] + " missing from the homotopy category");
    on_objects[o] = x;
  }
  std::vector<std::pair<int, int>> forced;
  for (int f = 0; f < k.num_morphisms(); ++f) {
    int hf = r.ho.morphism_of(ex.ez.ez[1][unit[1][edge_of(f)]]);
    r.ho_functor.push_back(hf);
    forced.push_back({hf, r.gz.functor[f]});
  }
  const int n = k.num_objects();
  r.hom_sizes.assign(n, std::vector<std::pair<int, int>>(n));
  for (int o = 0; o < n; ++o)
    for (int p = 0; p < n; ++p)
      r.hom_sizes[on_objects[o]][on_objects[p]] = {static_cast<int>(r.ho.cat.hom(o, p).size()),
                                                    static_cast<int>(r.gz.cat.hom(on_objects[o], on_objects[p]).size())};
  try {
    r.ho.cat.validate();
  } catch (const InputError& e) {
    r.detail = std::string("homotopy category is not a category: ") + e.what();
    return r;
  }
  auto iso = find_category_iso(r.ho.cat, r.gz.cat, on_objects, forced);
  if (!iso) {
    r.detail = "no isomorphism over the canonical functors";
    return r;
  }
  r.ho_to_gz = *iso;
  r.iso = true;
  return r;
}

}  // namespace ff

#endif
