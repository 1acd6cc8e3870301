#ifndef FRACTION_FORGE_LOCALIZE_FILTERED_HPP
#define FRACTION_FORGE_LOCALIZE_FILTERED_HPP

#include <optional>
#include <string>
#include <vector>

#include "fraction_forge/marked/marked.hpp"

namespace ff {

/// Why a finite category fails to be filtered, or nullopt.
inline std::optional<std::string> filtered_failure(const FinCategory& c) {
  if (c.num_objects() == 0) return "empty";
  for (int a = 0; a < c.num_objects(); ++a)
    for (int b = a + 1; b < c.num_objects(); ++b) {
      bool cocone = false;
      for (int t = 0; t < c.num_objects() && !cocone; ++t) cocone = !c.hom(a, t).empty() && !c.hom(b, t).empty();
      if (!cocone) return "no cocone on " + c.objects[a] + ", " + c.objects[b];
    }
  for (int f = 0; f < c.num_morphisms(); ++f)
    for (int g : c.hom(c.dom(f), c.cod(f))) {
      if (g <= f) continue;
      bool eq = false;
      for (int h : c.out_of(c.cod(f)))
        if (c.comp[h][f] == c.comp[h][g]) {
          eq = true;
          break;
        }
      if (!eq) return "nothing coequalizes " + c.morphisms[f].name + ", " + c.morphisms[g].name;
    }
  return std::nullopt;
}

inline bool is_filtered_category(const FinCategory& c) { return !filtered_failure(c); }

/// The marked coslice x/W: objects marked w : x -> y, morphisms
/// a : y -> y' with a w = w'.
inline FinCategory marked_coslice(const MarkedCategory& mc, int x) {
  const FinCategory& c = mc.cat;
  FinCategory s;
  std::vector<int> obj_of;
  std::vector<int> index(c.num_morphisms(), -1);
  for (int w : c.out_of(x)) {
    if (!mc.is_marked(w)) continue;
    index[w] = s.num_objects();
    s.objects.push_back(c.morphisms[w].name);
    obj_of.push_back(w);
  }
  std::vector<std::pair<int, int>> arrows;  // (object index, morphism of c)
  for (int i = 0; i < s.num_objects(); ++i)
    for (int a : c.out_of(c.cod(obj_of[i]))) {
      int j = index[c.comp[a][obj_of[i]]];
      if (j < 0) continue;
      arrows.push_back({i, a});
      s.morphisms.push_back({c.morphisms[a].name + "@" + s.objects[i], i, j});
    }
  s.identity.assign(s.num_objects(), -1);
  for (std::size_t m = 0; m < arrows.size(); ++m)
    if (c.is_identity(arrows[m].second)) s.identity[arrows[m].first] = static_cast<int>(m);
  const int n = s.num_morphisms();
  s.comp.assign(n, std::vector<int>(n, -1));
  for (int f = 0; f < n; ++f)
    for (int g = 0; g < n; ++g) {
      if (s.cod(f) != s.dom(g)) continue;
      int h = c.comp[arrows[g].second][arrows[f].second];
      for (int m = 0; m < n; ++m)
        if (arrows[m].first == s.dom(f) && arrows[m].second == h) s.comp[g][f] = m;
    }
  s.validate();
  return s;
}

inline bool slice_filtered_check(const MarkedCategory& c, int x) { return is_filtered_category(marked_coslice(c, x)); }

}  // namespace ff

#endif
