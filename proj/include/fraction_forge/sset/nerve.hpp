#ifndef FRACTION_FORGE_SSET_NERVE_HPP
#define FRACTION_FORGE_SSET_NERVE_HPP

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fraction_forge/sset/sset.hpp"

namespace ff {

/// A finite poset on named elements.
struct Poset {
  std::vector<std::string> names;
  std::vector<std::vector<char>> leq;

  int size() const { return static_cast<int>(names.size()); }
  bool le(int a, int b) const { return leq[a][b] != 0; }
  bool lt(int a, int b) const { return a != b && leq[a][b] != 0; }

  /// Builds the poset from an order predicate on 0..n-1 and checks the axioms.
  template <class Le>
  static Poset from(std::vector<std::string> names, Le&& le) {
    Poset p;
    const int n = static_cast<int>(names.size());
    p.names = std::move(names);
    p.leq.assign(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) p.leq[a][b] = le(a, b) ? 1 : 0;
    p.validate();
    return p;
  }

  void validate() const {
    const int n = size();
    for (int a = 0; a < n; ++a) {
      if (!le(a, a)) throw InputError("order is not reflexive at " + names[a]);
      for (int b = 0; b < n; ++b) {
        if (a != b && le(a, b) && le(b, a)) throw InputError("order is not antisymmetric at " + names[a]);
        for (int c = 0; c < n; ++c)
          if (le(a, b) && le(b, c) && !le(a, c)) throw InputError("order is not transitive at " + names[a]);
      }
    }
  }

  Poset opposite() const {
    Poset p;
    p.names = names;
    const int n = size();
    p.leq.assign(n, std::vector<char>(n, 0));
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) p.leq[a][b] = leq[b][a];
    return p;
  }

  /// Length of the longest strict chain, minus one.
  int height() const {
    const int n = size();
    std::vector<int> h(n, -1);
    std::function<int(int)> go = [&](int a) {
      if (h[a] >= 0) return h[a];
      int best = 0;
      for (int b = 0; b < n; ++b)
        if (lt(a, b)) best = std::max(best, go(b) + 1);
      return h[a] = best;
    };
    int best = n == 0 ? 0 : 0;
    for (int a = 0; a < n; ++a) best = std::max(best, go(a));
    return best;
  }
};

/// The ordinal [n] as a poset with elements named 0..n.
inline Poset ordinal(int n) {
  std::vector<std::string> names;
  for (int i = 0; i <= n; ++i) names.push_back(std::to_string(i));
  return Poset::from(std::move(names), [](int a, int b) { return a <= b; });
}

/// Nerve of a poset. Non-degenerate k-cells are strict chains of k+1
/// elements, ordered lexicographically by element index and named by
/// joining the element names with '<'.
inline SSet nerve_poset(const Poset& p, int bound = -1) {
  if (bound < 0) bound = p.height();
  SSet x(bound);
  std::vector<std::map<std::vector<int>, int>> index(bound + 1);
  std::vector<std::vector<std::vector<int>>> chains(bound + 1);
  for (int a = 0; a < p.size(); ++a) chains[0].push_back({a});
  for (int d = 1; d <= bound; ++d)
    for (auto const& c : chains[d - 1])
      for (int b = 0; b < p.size(); ++b)
        if (p.lt(c.back(), b)) {
          auto e = c;
          e.push_back(b);
          chains[d].push_back(std::move(e));
        }
  for (int d = 0; d <= bound; ++d) {
    std::sort(chains[d].begin(), chains[d].end());
    for (auto const& c : chains[d]) {
      std::string name;
      for (std::size_t j = 0; j < c.size(); ++j) name += (j ? "<" : "") + p.names[c[j]];
      std::vector<Simplex> faces;
      if (d > 0) {
        for (int i = 0; i <= d; ++i) {
          auto f = c;
          f.erase(f.begin() + i);
          faces.push_back(Simplex{d - 1, 0, index[d - 1].at(f)});
        }
      }
      index[d][c] = x.add_cell(d, std::move(name), std::move(faces));
    }
  }
  return x;
}

/// The standard n-simplex.
inline SSet standard_simplex(int n) { return nerve_poset(ordinal(n)); }

/// The boundary of the standard n-simplex.
inline SSet boundary(int n) {
  if (n < 1) throw InputError("boundary needs n >= 1");
  SSet d = standard_simplex(n);
  return sub_sset(d, [&](int dim, int) { return dim < n; }).sset.truncate(n - 1);
}

/// The horn Lambda^n_k.
inline SSet horn(int n, int k) {
  if (n < 1 || k < 0 || k > n) throw InputError("horn needs n >= 1 and 0 <= k <= n");
  SSet d = standard_simplex(n);
  const int skipped = d.faces(n, 0)[k].cell;
  return sub_sset(d, [&](int dim, int c) { return dim < n && !(dim == n - 1 && c == skipped); }).sset.truncate(n - 1);
}

/// The horn as a simplicial subset of the standard simplex, with bound n
/// so that maps into it and out of the simplex line up dimensionwise.
inline SubSSet horn_in_simplex(int n, int k) {
  SSet d = standard_simplex(n);
  const int skipped = d.faces(n, 0)[k].cell;
  return sub_sset(d, [&](int dim, int c) { return dim < n && !(dim == n - 1 && c == skipped); });
}

/// A finite category given by explicit composition table.
struct FinCategory {
  struct Morphism {
    std::string name;
    int dom = 0;
    int cod = 0;
  };
  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<int> identity;           // per object
  std::vector<std::vector<int>> comp;  // comp[g][f] = g o f, -1 if not composable

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_morphisms() const { return static_cast<int>(morphisms.size()); }
  int dom(int f) const { return morphisms[f].dom; }
  int cod(int f) const { return morphisms[f].cod; }
  bool is_identity(int f) const { return identity[morphisms[f].dom] == f; }

  int compose(int g, int f) const {
    int r = comp[g][f];
    if (r < 0) throw PreconditionError("morphisms " + morphisms[g].name + " and " + morphisms[f].name + " are not composable");
    return r;
  }

  std::vector<int> hom(int x, int y) const {
    std::vector<int> r;
    for (int f = 0; f < num_morphisms(); ++f)
      if (morphisms[f].dom == x && morphisms[f].cod == y) r.push_back(f);
    return r;
  }

  std::vector<int> out_of(int x) const {
    std::vector<int> r;
    for (int f = 0; f < num_morphisms(); ++f)
      if (morphisms[f].dom == x) r.push_back(f);
    return r;
  }

  std::vector<int> into(int y) const {
    std::vector<int> r;
    for (int f = 0; f < num_morphisms(); ++f)
      if (morphisms[f].cod == y) r.push_back(f);
    return r;
  }

  int find_object(const std::string& n) const {
    for (int i = 0; i < num_objects(); ++i)
      if (objects[i] == n) return i;
    return -1;
  }

  int find_morphism(const std::string& n) const {
    for (int i = 0; i < num_morphisms(); ++i)
      if (morphisms[i].name == n) return i;
    return -1;
  }

  bool is_iso(int f) const {
    for (int g : hom(cod(f), dom(f)))
      if (comp[g][f] == identity[dom(f)] && comp[f][g] == identity[cod(f)]) return true;
    return false;
  }

  /// Checks typing, unit and associativity laws; throws InputError.
  void validate() const {
    const int n = num_morphisms();
    if (static_cast<int>(identity.size()) != num_objects()) throw InputError("every object needs an identity");
    if (static_cast<int>(comp.size()) != n) throw InputError("composition table has the wrong size");
    for (int x = 0; x < num_objects(); ++x) {
      int i = identity[x];
      if (i < 0 || i >= n || dom(i) != x || cod(i) != x)
        throw InputError("identity of " + objects[x] + " is not an endomorphism of it");
    }
    for (int g = 0; g < n; ++g) {
      for (int f = 0; f < n; ++f) {
        int r = comp[g][f];
        if ((cod(f) == dom(g)) != (r >= 0))
          throw InputError("composite of " + morphisms[g].name + " after " + morphisms[f].name +
                           (r >= 0 ? " given for a non-composable pair" : " is missing"));
        if (r >= 0 && (dom(r) != dom(f) || cod(r) != cod(g)))
          throw InputError("composite of " + morphisms[g].name + " after " + morphisms[f].name + " has the wrong type");
      }
    }
    for (int f = 0; f < n; ++f) {
      if (comp[f][identity[dom(f)]] != f || comp[identity[cod(f)]][f] != f)
        throw InputError("unit law fails for " + morphisms[f].name);
    }
    for (int f = 0; f < n; ++f)
      for (int g : out_of(cod(f)))
        for (int h : out_of(cod(g)))
          if (comp[h][comp[g][f]] != comp[comp[h][g]][f])
            throw InputError("associativity fails for " + morphisms[h].name + ", " + morphisms[g].name + ", " +
                             morphisms[f].name);
  }

  FinCategory opposite() const {
    FinCategory op = *this;
    for (auto& m : op.morphisms) std::swap(m.dom, m.cod);
    const int n = num_morphisms();
    for (int g = 0; g < n; ++g)
      for (int f = 0; f < n; ++f) op.comp[g][f] = comp[f][g];
    return op;
  }
};

/// Nerve of a finite category truncated at `bound`. Non-degenerate
/// k-cells are composable strings of k non-identity morphisms, named
/// "[f1,f2,...]" in order of traversal; 1-cells carry the morphism name.
/// Cell index of a 1-cell is recorded in `edge_of_morphism`.
struct CategoryNerve {
  SSet sset;
  std::vector<int> edge_of_morphism;  // -1 for identities
  std::vector<int> morphism_of_edge;
  std::vector<std::vector<std::vector<int>>> strings;  // strings[d][cell]
};

inline CategoryNerve nerve_category(const FinCategory& c, int bound) {
  CategoryNerve r{SSet(bound), {}, {}, {}};
  r.strings.resize(bound + 1);
  std::vector<std::map<std::vector<int>, int>> index(bound + 1);
  for (int x = 0; x < c.num_objects(); ++x) {
    r.sset.add_cell(0, c.objects[x]);
    r.strings[0].push_back({x});  // a 0-cell records its object
  }
  r.edge_of_morphism.assign(c.num_morphisms(), -1);
  std::vector<std::vector<int>> level;
  if (bound >= 1) {
    for (int f = 0; f < c.num_morphisms(); ++f) {
      if (c.is_identity(f)) continue;
      int e = r.sset.add_cell(1, c.morphisms[f].name,
                              {Simplex{0, 0, c.cod(f)}, Simplex{0, 0, c.dom(f)}});
      r.edge_of_morphism[f] = e;
      r.morphism_of_edge.push_back(f);
      r.strings[1].push_back({f});
      index[1][{f}] = e;
      level.push_back({f});
    }
  }
  // EZ form of a string of k morphisms that may contain identities.
  auto ez = [&](const std::vector<int>& s, int k) -> Simplex {
    std::vector<int> core;
    uint32_t mask = 0;
    for (int p = 0; p < k; ++p) {
      if (c.is_identity(s[p])) {
        mask |= 1u << p;
      } else {
        core.push_back(s[p]);
      }
    }
    if (core.empty()) return Simplex{k, mask, c.dom(s[0])};
    return Simplex{k, mask, index[core.size()].at(core)};
  };
  for (int d = 2; d <= bound; ++d) {
    std::vector<std::vector<int>> next;
    for (auto const& s : level)
      for (int g : c.out_of(c.cod(s.back())))
        if (!c.is_identity(g)) {
          auto t = s;
          t.push_back(g);
          next.push_back(std::move(t));
        }
    for (auto const& s : next) {
      std::vector<Simplex> faces;
      for (int i = 0; i <= d; ++i) {
        std::vector<int> f;
        if (i == 0) {
          f.assign(s.begin() + 1, s.end());
        } else if (i == d) {
          f.assign(s.begin(), s.end() - 1);
        } else {
          for (int p = 0; p < d; ++p) {
            if (p == i - 1) {
              f.push_back(c.compose(s[i], s[i - 1]));
              ++p;
            } else {
              f.push_back(s[p]);
            }
          }
        }
        faces.push_back(ez(f, d - 1));
      }
      std::string name = "[";
      for (std::size_t p = 0; p < s.size(); ++p) name += (p ? "," : "") + c.morphisms[s[p]].name;
      name += "]";
      int id = r.sset.add_cell(d, std::move(name), std::move(faces));
      index[d][s] = id;
      r.strings[d].push_back(s);
    }
    level = std::move(next);
  }
  return r;
}

}  // namespace ff

#endif
