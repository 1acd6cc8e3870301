#ifndef FRACTION_FORGE_LOCALIZE_PROBE_HPP
#define FRACTION_FORGE_LOCALIZE_PROBE_HPP

#include <optional>
#include <string>
#include <vector>

#include "fraction_forge/localize/gz.hpp"

namespace ff {

/// A coequalizer diagram (f, g : a -> b) or a pushout diagram
/// (f : a -> b, g : a -> c).
struct ColimitDiagram {
  enum class Kind { Coequalizer, Pushout } kind = Kind::Coequalizer;
  int f = -1;
  int g = -1;
};

inline std::string kind_name(ColimitDiagram::Kind k) {
  return k == ColimitDiagram::Kind::Coequalizer ? "coequalizer" : "pushout";
}

namespace probe_detail {

inline void check_diagram(const FinCategory& c, const ColimitDiagram& d) {
  if (d.f < 0 || d.g < 0 || d.f >= c.num_morphisms() || d.g >= c.num_morphisms())
    throw InputError("diagram morphism out of range");
  if (c.dom(d.f) != c.dom(d.g)) throw InputError("diagram morphisms must share a domain");
  if (d.kind == ColimitDiagram::Kind::Coequalizer && c.cod(d.f) != c.cod(d.g))
    throw InputError("a coequalizer needs a parallel pair");
}

// Cocones as leg lists: {h} on b for a coequalizer, {p, r} on b, c for a pushout.
inline std::vector<std::vector<int>> cocones(const FinCategory& c, const ColimitDiagram& d) {
  std::vector<std::vector<int>> r;
  if (d.kind == ColimitDiagram::Kind::Coequalizer) {
    for (int h : c.out_of(c.cod(d.f)))
      if (c.comp[h][d.f] == c.comp[h][d.g]) r.push_back({h});
  } else {
    for (int p : c.out_of(c.cod(d.f)))
      for (int q : c.hom(c.cod(d.g), c.cod(p)))
        if (c.comp[p][d.f] == c.comp[q][d.g]) r.push_back({p, q});
  }
  return r;
}

inline bool universal(const FinCategory& c, const ColimitDiagram& d, const std::vector<int>& legs) {
  const int apex = c.cod(legs[0]);
  for (auto const& other : cocones(c, d)) {
    int count = 0;
    for (int u : c.hom(apex, c.cod(other[0]))) {
      bool ok = true;
      for (std::size_t i = 0; i < legs.size(); ++i) ok = ok && c.comp[u][legs[i]] == other[i];
      count += ok;
    }
    if (count != 1) return false;
  }
  return true;
}

}  // namespace probe_detail

/// A colimiting cocone of the diagram in c, found by enumeration.
inline std::optional<std::vector<int>> find_colimit(const FinCategory& c, const ColimitDiagram& d) {
  probe_detail::check_diagram(c, d);
  for (auto const& legs : probe_detail::cocones(c, d))
    if (probe_detail::universal(c, d, legs)) return legs;
  return std::nullopt;
}

struct ProbeResult {
  bool preserved = false;
  std::vector<int> legs;        // colimit cocone in C
  std::vector<int> image_legs;  // its image in C W^-1
  std::string detail;
};

/// Whether C -> C W^-1 sends the colimit of the diagram to a colimit.
inline ProbeResult colimit_preservation_probe(const MarkedCategory& c, const ColimitDiagram& d) {
  auto v = check_proper_clf(c);
  if (!v.ok) throw PreconditionError("proper calculus of left fractions fails at condition " + v.failed);
  auto legs = find_colimit(c.cat, d);
  if (!legs) throw PreconditionError("the " + kind_name(d.kind) + " has no colimit in the category");
  Fractions fr = gz_left_fractions(c);
  ProbeResult r;
  r.legs = *legs;
  for (int l : *legs) r.image_legs.push_back(fr.functor[l]);
  ColimitDiagram image{d.kind, fr.functor[d.f], fr.functor[d.g]};
  r.preserved = probe_detail::universal(fr.cat, image, r.image_legs);
  if (!r.preserved) r.detail = "the image cocone is not universal in the localization";
  return r;
}

}  // namespace ff

#endif
