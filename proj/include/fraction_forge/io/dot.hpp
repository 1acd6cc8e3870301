#ifndef FRACTION_FORGE_IO_DOT_HPP
#define FRACTION_FORGE_IO_DOT_HPP

#include <string>

#include "fraction_forge/localize/gz.hpp"

namespace ff {

namespace dot_detail {

inline std::string quote(const std::string& s) {
  std::string r = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') r += '\\';
    r += ch;
  }
  return r + "\"";
}

inline std::string header(const std::string& name) { return "digraph " + quote(name) + " {\n  rankdir=LR;\n"; }

inline std::string nodes(const FinCategory& k) {
  std::string s;
  for (auto const& o : k.objects) s += "  " + quote(o) + ";\n";
  return s;
}

inline std::string edge(const FinCategory& k, int f, const char* style) {
  std::string s = "  " + quote(k.objects[k.dom(f)]) + " -> " + quote(k.objects[k.cod(f)]) + " [label=" +
                  quote(k.morphisms[f].name);
  if (style) s += std::string(", style=") + style;
  return s + "];\n";
}

}  // namespace dot_detail

/// One node per object in input order, one edge per non-identity
/// morphism; marked morphisms are bold.
inline std::string category_dot(const MarkedCategory& c, const std::string& name) {
  const FinCategory& k = c.cat;
  std::string s = dot_detail::header(name) + dot_detail::nodes(k);
  for (int f = 0; f < k.num_morphisms(); ++f)
    if (!k.is_identity(f)) s += dot_detail::edge(k, f, c.is_marked(f) ? "bold" : nullptr);
  return s + "}\n";
}

/// The category of fractions, one edge per class. Images of marked
/// morphisms are bold; classes with no representative of the form
/// (f, id) are formal fractions and drawn dashed.
inline std::string fractions_dot(const MarkedCategory& c, const Fractions& fr, const std::string& name) {
  const FinCategory& k = fr.cat;
  std::vector<char> marked_image(k.num_morphisms(), 0);
  for (int f = 0; f < c.cat.num_morphisms(); ++f)
    if (c.is_marked(f)) marked_image[fr.functor[f]] = 1;
  std::string s = dot_detail::header(name) + dot_detail::nodes(k);
  for (int m = 0; m < k.num_morphisms(); ++m) {
    if (k.is_identity(m)) continue;
    auto [xy, cls] = fr.class_of_morphism[m];
    const FractionHom& h = fr.homs[xy.first][xy.second];
    bool plain = false;
    for (std::size_t i = 0; i < h.cospans.size(); ++i)
      if (h.class_of[i] == cls && fr.work.cat.is_identity(h.cospans[i].w)) plain = true;
    s += dot_detail::edge(k, m, marked_image[m] ? "bold" : plain ? nullptr : "dashed");
  }
  return s + "}\n";
}

}  // namespace ff

#endif
