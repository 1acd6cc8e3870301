#ifndef FRACTION_FORGE_SSET_QCAT_HPP
#define FRACTION_FORGE_SSET_QCAT_HPP

#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "fraction_forge/sset/maps.hpp"
#include "fraction_forge/sset/nerve.hpp"

namespace ff {

/// A horn Lambda^n_k -> X with no filler.
struct HornWitness {
  int n = 0;
  int k = 0;
  SMap horn;  // map from horn_in_simplex(n, k).sset
};

/// First unfillable horn Lambda^n_k -> X, if any.
inline std::optional<HornWitness> unfillable_horn(const SSet& x, int n, int k) {
  if (n > x.dim_bound())
    throw BoundError("horn dimension " + std::to_string(n) + " above bound " + std::to_string(x.dim_bound()));
  SubSSet h = horn_in_simplex(n, k);
  SSet simplex = standard_simplex(n);
  std::optional<HornWitness> w;
  MapEnumerator(h.sset, x).run([&](const SMap& f) {
    MapEnumerator ext(simplex, x);
    for (int d = 0; d < n; ++d)
      for (int c = 0; c < static_cast<int>(h.sset.size(d)); ++c) ext.fix(d, h.to_ambient[d][c], f.img[d][c]);
    if (ext.first()) return true;
    w = HornWitness{n, k, f};
    return false;
  });
  return w;
}

/// Inner horn filling for 2 <= n <= up_to.
inline std::optional<HornWitness> quasicategory_witness(const SSet& x, int up_to) {
  for (int n = 2; n <= up_to; ++n)
    for (int k = 1; k < n; ++k)
      if (auto w = unfillable_horn(x, n, k)) return w;
  return std::nullopt;
}

inline bool is_quasicategory_upto(const SSet& x, int up_to) { return !quasicategory_witness(x, up_to); }

/// Union-find over dense indices.
class UnionFind {
 public:
  explicit UnionFind(std::size_t n = 0) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t add() {
    parent_.push_back(parent_.size());
    return parent_.size() - 1;
  }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  // The smaller root wins, so representatives are first occurrences.
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return true;
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

/// Homotopy category of a simplicial set whose 2-simplices fill every
/// composable pair. Morphisms are classes of 1-simplices under the
/// relation f ~ g when some 2-simplex has faces (id, g, f).
struct HoCategory {
  FinCategory cat;
  std::vector<Simplex> edges;       // every 1-simplex, degenerate ones included
  std::vector<int> class_of_edge;   // morphism of cat per edge
  std::map<Simplex, int> edge_index;

  int morphism_of(const Simplex& e) const { return class_of_edge.at(edge_index.at(e)); }
};

inline HoCategory ho_of_qcat(const SSet& x) {
  if (x.dim_bound() < 2) throw BoundError("homotopy category needs simplices up to dimension 2");
  HoCategory h;
  h.edges = x.all_simplices(1);
  for (std::size_t i = 0; i < h.edges.size(); ++i) h.edge_index[h.edges[i]] = static_cast<int>(i);
  UnionFind uf(h.edges.size());
  const auto tri = x.all_simplices(2);
  for (auto const& s : tri) {
    if (x.face(s, 0).degenerate()) uf.unite(h.edge_index.at(x.face(s, 2)), h.edge_index.at(x.face(s, 1)));
  }
  std::vector<int> cls(h.edges.size(), -1);
  h.class_of_edge.assign(h.edges.size(), -1);
  for (std::size_t i = 0; i < h.edges.size(); ++i) {
    std::size_t r = uf.find(i);
    if (cls[r] < 0) {
      cls[r] = h.cat.num_morphisms();
      const Simplex& e = h.edges[i];
      std::string name = e.degenerate() ? "id:" + x.name(0, e.cell) : x.name(1, e.cell);
      h.cat.morphisms.push_back({name, x.vertex(e, 0), x.vertex(e, 1)});
    }
    h.class_of_edge[i] = cls[r];
  }
  for (int v = 0; v < static_cast<int>(x.size(0)); ++v) {
    h.cat.objects.push_back(x.name(0, v));
    h.cat.identity.push_back(h.morphism_of(Simplex{1, 1u, v}));
  }
  const int m = h.cat.num_morphisms();
  h.cat.comp.assign(m, std::vector<int>(m, -1));
  for (auto const& s : tri) {
    int f = h.morphism_of(x.face(s, 2));
    int g = h.morphism_of(x.face(s, 0));
    int gf = h.morphism_of(x.face(s, 1));
    int& slot = h.cat.comp[g][f];
    if (slot >= 0 && slot != gf)
      throw PreconditionError("composition in the homotopy category is not well defined at " +
                              h.cat.morphisms[g].name + " after " + h.cat.morphisms[f].name);
    slot = gf;
  }
  for (int g = 0; g < m; ++g)
    for (int f = 0; f < m; ++f)
      if (h.cat.cod(f) == h.cat.dom(g) && h.cat.comp[g][f] < 0)
        throw PreconditionError("no 2-simplex composes " + h.cat.morphisms[f].name + " with " + h.cat.morphisms[g].name);
  return h;
}

}  // namespace ff

#endif
