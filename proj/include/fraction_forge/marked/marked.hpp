#ifndef FRACTION_FORGE_MARKED_MARKED_HPP
#define FRACTION_FORGE_MARKED_MARKED_HPP

#include <optional>
#include <string>
#include <vector>

#include "fraction_forge/sset/constructions.hpp"
#include "fraction_forge/sset/maps.hpp"
#include "fraction_forge/sset/nerve.hpp"
#include "fraction_forge/sset/qcat.hpp"

namespace ff {

/// A simplicial set with a set of marked non-degenerate edges. Degenerate
/// edges count as marked.
struct MarkedSSet {
  SSet sset;
  std::vector<char> marked;  // per non-degenerate 1-cell

  MarkedSSet() = default;
  MarkedSSet(SSet s, std::vector<char> m) : sset(std::move(s)), marked(std::move(m)) {
    if (marked.size() != (sset.dim_bound() >= 1 ? sset.size(1) : 0))
      throw InputError("marking does not match the number of edges");
  }

  bool is_marked(const Simplex& e) const {
    if (e.dim != 1) throw InputError("only edges carry a marking");
    return e.degenerate() || marked.at(e.cell) != 0;
  }

  std::size_t marked_count() const {
    std::size_t n = 0;
    for (char c : marked) n += c != 0;
    return n;
  }
};

inline MarkedSSet minimal_marking(SSet x) {
  std::vector<char> m(x.dim_bound() >= 1 ? x.size(1) : 0, 0);
  return MarkedSSet(std::move(x), std::move(m));
}

inline MarkedSSet maximal_marking(SSet x) {
  std::vector<char> m(x.dim_bound() >= 1 ? x.size(1) : 0, 1);
  return MarkedSSet(std::move(x), std::move(m));
}

/// Marks the edges that become isomorphisms in the homotopy category.
/// Needs the 2-dimensional inner horn to fill.
inline MarkedSSet natural_marking(const SSet& x) {
  if (auto w = quasicategory_witness(x, 2))
    throw PreconditionError("natural marking needs a quasicategory; an inner 2-horn has no filler");
  HoCategory h = ho_of_qcat(x);
  std::vector<char> m(x.size(1), 0);
  for (int e = 0; e < static_cast<int>(x.size(1)); ++e) m[e] = h.cat.is_iso(h.morphism_of(x.cell(1, e))) ? 1 : 0;
  return MarkedSSet(x, std::move(m));
}

inline MarkedSSet opposite(const MarkedSSet& x) { return MarkedSSet(opposite(x.sset), x.marked); }

/// Restriction of a marking to a simplicial subset.
inline MarkedSSet restrict_marking(const MarkedSSet& x, const SubSSet& sub) {
  std::vector<char> m;
  if (sub.sset.dim_bound() >= 1)
    for (int e : sub.to_ambient[1]) m.push_back(x.marked.at(e));
  return MarkedSSet(sub.sset, std::move(m));
}

/// Every edge of a simplex, as (i, j, edge) with i < j.
inline bool all_edges_marked(const MarkedSSet& x, const Simplex& s) {
  for (int i = 0; i <= s.dim; ++i)
    for (int j = i + 1; j <= s.dim; ++j)
      if (!x.is_marked(x.sset.edge(s, i, j))) return false;
  return true;
}

/// The largest simplicial subset all of whose edges are marked.
inline SubSSet marked_core(const MarkedSSet& x) {
  return sub_sset(x.sset, [&](int d, int c) { return all_edges_marked(x, x.sset.cell(d, c)); });
}

/// Evidence that a closure property fails.
struct MarkingWitness {
  std::string property;
  std::vector<Simplex> simplices;
  std::string detail;
};

/// Every pair of composable marked edges has a 2-simplex filler whose
/// three edges are marked.
inline std::optional<MarkingWitness> weak_closure_witness(const MarkedSSet& x) {
  if (x.sset.dim_bound() < 2) throw BoundError("weak closure needs 2-simplices");
  const auto edges = x.sset.all_simplices(1);
  const auto tri = x.sset.all_simplices(2);
  std::map<std::pair<Simplex, Simplex>, bool> filled;
  for (auto const& t : tri)
    if (all_edges_marked(x, t)) filled[{x.sset.face(t, 2), x.sset.face(t, 0)}] = true;
  for (auto const& e1 : edges) {
    if (!x.is_marked(e1)) continue;
    for (auto const& e2 : edges) {
      if (!x.is_marked(e2) || x.sset.vertex(e1, 1) != x.sset.vertex(e2, 0)) continue;
      if (!filled.count({e1, e2}))
        return MarkingWitness{"weakly closed", {e1, e2}, "marked pair " + x.sset.describe(e1) + ", " +
                                                              x.sset.describe(e2) + " has no fully marked filler"};
    }
  }
  return std::nullopt;
}

/// A 2-simplex with marked d0 and d2 has marked d1.
inline std::optional<MarkingWitness> strong_closure_witness(const MarkedSSet& x) {
  if (x.sset.dim_bound() < 2) throw BoundError("strong closure needs 2-simplices");
  for (auto const& t : x.sset.all_simplices(2)) {
    if (x.is_marked(x.sset.face(t, 0)) && x.is_marked(x.sset.face(t, 2)) && !x.is_marked(x.sset.face(t, 1)))
      return MarkingWitness{"strongly closed", {t}, "2-simplex " + x.sset.describe(t) + " has unmarked long edge"};
  }
  return std::nullopt;
}

/// Any two marked edges of a 2-simplex force the third.
inline std::optional<MarkingWitness> two_out_of_three_witness(const MarkedSSet& x) {
  if (x.sset.dim_bound() < 2) throw BoundError("two-out-of-three needs 2-simplices");
  for (auto const& t : x.sset.all_simplices(2)) {
    int m = 0;
    for (int i = 0; i <= 2; ++i) m += x.is_marked(x.sset.face(t, i)) ? 1 : 0;
    if (m == 2) return MarkingWitness{"two-out-of-three", {t}, "2-simplex " + x.sset.describe(t) + " has exactly two marked edges"};
  }
  return std::nullopt;
}

inline bool is_weakly_closed(const MarkedSSet& x) { return !weak_closure_witness(x); }
inline bool is_strongly_closed(const MarkedSSet& x) { return !strong_closure_witness(x); }
inline bool is_two_out_of_three(const MarkedSSet& x) { return !two_out_of_three_witness(x); }

/// Enumerator of maps A -> X sending marked edges to marked edges.
inline MapEnumerator marked_enumerator(const MarkedSSet& a, const MarkedSSet& x) {
  MapEnumerator e(a.sset, x.sset);
  e.require([&a, &x](int d, int c, const Simplex& t) { return d != 1 || !a.marked[c] || x.is_marked(t); });
  return e;
}

inline std::vector<SMap> enumerate_marked_maps(const MarkedSSet& a, const MarkedSSet& x) {
  return marked_enumerator(a, x).all();
}

inline bool is_marked_map(const MarkedSSet& a, const MarkedSSet& x, const SMap& f, std::string* why = nullptr) {
  if (!is_simplicial_map(a.sset, x.sset, f, why)) return false;
  for (int e = 0; a.sset.dim_bound() >= 1 && e < static_cast<int>(a.sset.size(1)); ++e) {
    if (a.marked[e] && !x.is_marked(f.img[1][e])) {
      if (why) *why = "marked edge " + a.sset.name(1, e) + " goes to an unmarked edge";
      return false;
    }
  }
  return true;
}

/// Isomorphism of marked simplicial sets.
inline std::optional<SMap> find_marked_isomorphism(const MarkedSSet& a, const MarkedSSet& x) {
  if (a.sset.top_dim() != x.sset.top_dim() || a.marked_count() != x.marked_count()) return std::nullopt;
  for (int d = 0; d <= a.sset.top_dim(); ++d)
    if (a.sset.size(d) != x.sset.size(d)) return std::nullopt;
  auto e = marked_enumerator(a, x);
  e.injective_nondegenerate();
  return e.first();
}

/// A cylinder X x Delta^1 with the product marking (marked edges of X
/// times the maximal marking of Delta^1).
struct Cylinder {
  Product prod;
  MarkedSSet marked;
};

inline Cylinder cylinder(const MarkedSSet& x) {
  SSet d1 = standard_simplex(1);
  Product p = product(x.sset, d1, x.sset.top_dim() + 1);
  std::vector<char> m(p.sset.size(1), 0);
  for (int e = 0; e < static_cast<int>(p.sset.size(1)); ++e) m[e] = x.is_marked(p.pairs[1][e].first) ? 1 : 0;
  MarkedSSet ms(p.sset, std::move(m));
  return Cylinder{std::move(p), std::move(ms)};
}

/// Restriction of a map out of a cylinder to one end.
inline SMap cylinder_end(const Cylinder& cyl, const SSet& x, const SMap& h, int end) {
  SMap f;
  f.img.resize(x.dim_bound() + 1);
  for (int d = 0; d <= x.dim_bound(); ++d)
    for (int c = 0; c < static_cast<int>(x.size(d)); ++c) {
      Simplex v{d, d == 0 ? 0u : (1u << d) - 1u, end};
      f.img[d].push_back(image(h, cyl.prod.find(x.cell(d, c), v)));
    }
  return f;
}

/// Checks that h is a marked map out of the cylinder and returns its two
/// ends on success.
struct HomotopyCheck {
  bool ok = false;
  std::string reason;
  SMap from;
  SMap to;
};

inline HomotopyCheck is_marked_homotopy(const Cylinder& cyl, const MarkedSSet& x, const MarkedSSet& y, const SMap& h) {
  HomotopyCheck r;
  if (h.img.size() < cyl.prod.sset.dim_bound() + 1u) {
    r.reason = "malformed cylinder map";
    return r;
  }
  if (!is_marked_map(cyl.marked, y, h, &r.reason)) return r;
  r.from = cylinder_end(cyl, x.sset, h, 0);
  r.to = cylinder_end(cyl, x.sset, h, 1);
  r.ok = true;
  return r;
}

/// A finite category with a wide subcategory of marked morphisms.
struct MarkedCategory {
  FinCategory cat;
  std::vector<char> marked;  // per morphism

  bool is_marked(int f) const { return marked.at(f) != 0; }

  void validate() const {
    cat.validate();
    if (marked.size() != cat.morphisms.size()) throw InputError("marking does not cover every morphism");
    for (int x = 0; x < cat.num_objects(); ++x)
      if (!marked[cat.identity[x]]) throw InputError("identity of " + cat.objects[x] + " must be marked");
  }

  MarkedCategory opposite() const { return MarkedCategory{cat.opposite(), marked}; }
};

inline MarkedCategory iso_marking(const FinCategory& c) {
  MarkedCategory m{c, std::vector<char>(c.morphisms.size(), 0)};
  for (int f = 0; f < c.num_morphisms(); ++f) m.marked[f] = c.is_iso(f) ? 1 : 0;
  return m;
}

/// The nerve of a marked category with marked edges the marked morphisms.
struct MarkedNerve {
  CategoryNerve nerve;
  MarkedSSet marked;
};

inline MarkedNerve marked_nerve(const MarkedCategory& c, int bound) {
  CategoryNerve n = nerve_category(c.cat, bound);
  std::vector<char> m;
  if (bound >= 1)
    for (int f : n.morphism_of_edge) m.push_back(c.marked[f]);
  MarkedSSet ms(n.sset, std::move(m));
  return MarkedNerve{std::move(n), std::move(ms)};
}

}  // namespace ff

#endif
