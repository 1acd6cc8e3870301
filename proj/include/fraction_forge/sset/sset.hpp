#ifndef FRACTION_FORGE_SSET_SSET_HPP
#define FRACTION_FORGE_SSET_SSET_HPP

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fraction_forge/sset/simplex.hpp"

namespace ff {

/// A finite simplicial set truncated at dim_bound, stored by its
/// non-degenerate cells and their faces in Eilenberg-Zilber form.
/// Every simplex is recovered by applying degeneracies. Questions
/// that need cells above the bound throw BoundError.
class SSet {
 public:
  explicit SSet(int dim_bound = 0) : bound_(dim_bound) {
    if (dim_bound < 0 || dim_bound > kMaxDim) throw InputError("dimension bound out of range");
    names_.resize(dim_bound + 1);
    faces_.resize(dim_bound + 1);
  }

  int dim_bound() const { return bound_; }

  /// Highest dimension carrying a non-degenerate cell, or -1 if empty.
  int top_dim() const {
    for (int d = bound_; d >= 0; --d)
      if (!names_[d].empty()) return d;
    return -1;
  }

  std::size_t size(int dim) const {
    if (dim < 0) return 0;
    if (dim > bound_) throw BoundError("dimension " + std::to_string(dim) + " above bound " + std::to_string(bound_));
    return names_[dim].size();
  }

  std::size_t total_cells() const {
    std::size_t n = 0;
    for (auto const& v : names_) n += v.size();
    return n;
  }

  bool empty() const { return names_[0].empty(); }

  const std::string& name(int dim, int cell) const { return names_.at(dim).at(cell); }

  std::optional<std::pair<int, int>> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Adds a non-degenerate cell. Faces must already exist.
  int add_cell(int dim, std::string name, std::vector<Simplex> faces = {}) {
    if (dim < 0 || dim > bound_) throw BoundError("cell dimension " + std::to_string(dim) + " above bound");
    if (dim == 0 ? !faces.empty() : static_cast<int>(faces.size()) != dim + 1)
      throw InputError("cell " + name + " has " + std::to_string(faces.size()) + " faces, expected " +
                       std::to_string(dim == 0 ? 0 : dim + 1));
    for (auto const& f : faces) {
      if (f.dim != dim - 1 || f.cell_dim() < 0 || f.cell < 0 ||
          f.cell >= static_cast<int>(names_[f.cell_dim()].size()))
        throw InputError("cell " + name + " has a face that is not a known simplex of dimension " +
                         std::to_string(dim - 1));
    }
    if (index_.count(name)) throw InputError("duplicate cell name " + name);
    int id = static_cast<int>(names_[dim].size());
    index_.emplace(name, std::make_pair(dim, id));
    names_[dim].push_back(std::move(name));
    faces_[dim].push_back(std::move(faces));
    return id;
  }

  const std::vector<Simplex>& faces(int dim, int cell) const { return faces_.at(dim).at(cell); }

  Simplex cell(int dim, int c) const { return Simplex{dim, 0, c}; }

  /// Face d_i of an arbitrary simplex.
  Simplex face(const Simplex& s, int i) const { return apply(Mono::coface(s.dim, i), s); }

  Simplex degeneracy(const Simplex& s, int j) const { return degenerate(s, j); }

  /// The simplex s . theta for a monotone theta : [k] -> [s.dim].
  Simplex apply(const Mono& th, const Simplex& s) const {
    if (th.tgt != s.dim) throw InputError("operator does not match simplex dimension");
    const int k = th.src;
    std::array<int, kMaxDim + 1> c{};
    uint32_t used = 0;
    for (int j = 0; j <= k; ++j) {
      c[j] = surj_value(s.degen, th.v[j]);
      used |= 1u << c[j];
    }
    uint32_t mask = 0;
    for (int j = 0; j < k; ++j)
      if (c[j] == c[j + 1]) mask |= 1u << j;
    const int m = s.cell_dim();
    const uint32_t full = m >= 31 ? ~0u : ((1u << (m + 1)) - 1u);
    if (used == full) return Simplex{k, mask, s.cell};
    Simplex y = restrict_cell(m, s.cell, used);
    return Simplex{k, compose_surj(mask, y.degen, k), y.cell};
  }

  /// Vertex j of a simplex.
  int vertex(const Simplex& s, int j) const {
    int m = s.cell_dim();
    int idx = surj_value(s.degen, j);
    int c = s.cell;
    while (m > 0) {
      int drop = idx == m ? 0 : m;
      Simplex f = faces_[m][c][drop];
      int i2 = drop > idx ? idx : idx - 1;
      idx = surj_value(f.degen, i2);
      c = f.cell;
      m = f.cell_dim();
    }
    return c;
  }

  std::vector<int> vertices(const Simplex& s) const {
    std::vector<int> v(s.dim + 1);
    for (int j = 0; j <= s.dim; ++j) v[j] = vertex(s, j);
    return v;
  }

  /// The edge from vertex i to vertex j (i <= j) of a simplex.
  Simplex edge(const Simplex& s, int i, int j) const { return apply(Mono::from_values(s.dim, {i, j}), s); }

  /// Every simplex of dimension k, degenerate ones included, in a fixed
  /// order: by cell dimension, then degeneracy mask, then cell index.
  std::vector<Simplex> all_simplices(int k) const {
    std::vector<Simplex> out;
    for (int m = 0; m <= std::min(k, bound_); ++m) {
      if (names_[m].empty()) continue;
      for (uint32_t mask = 0; mask < (1u << k); ++mask) {
        if (std::popcount(mask) != k - m) continue;
        for (int c = 0; c < static_cast<int>(names_[m].size()); ++c) out.push_back(Simplex{k, mask, c});
      }
    }
    return out;
  }

  /// Throws unless the stored faces satisfy d_i d_j = d_{j-1} d_i (i < j).
  void check_identities() const {
    for (int n = 2; n <= bound_; ++n) {
      for (int c = 0; c < static_cast<int>(names_[n].size()); ++c) {
        Simplex x = cell(n, c);
        for (int j = 1; j <= n; ++j) {
          for (int i = 0; i < j; ++i) {
            if (face(face(x, j), i) != face(face(x, i), j - 1))
              throw InputError("simplicial identity d" + std::to_string(i) + " d" + std::to_string(j) +
                               " fails on cell " + names_[n][c]);
          }
        }
      }
    }
  }

  std::string describe(const Simplex& s) const {
    std::string out;
    for (int j : mask_to_word(s.degen)) out += "s" + std::to_string(j) + " ";
    out += names_.at(s.cell_dim()).at(s.cell);
    return out;
  }

  /// Copy with a lower dimension bound.
  SSet truncate(int bound) const {
    SSet t(std::min(bound, bound_));
    for (int d = 0; d <= t.bound_; ++d)
      for (std::size_t c = 0; c < names_[d].size(); ++c) t.add_cell(d, names_[d][c], faces_[d][c]);
    return t;
  }

  bool operator==(const SSet& o) const { return bound_ == o.bound_ && names_ == o.names_ && faces_ == o.faces_; }

 private:
  // Restriction of the non-degenerate m-cell c to the vertices in `keep`.
  Simplex restrict_cell(int m, int c, uint32_t keep) const {
    int j = m;
    while (keep >> j & 1u) --j;
    Simplex y = faces_[m][c][j];
    uint32_t low = keep & ((1u << j) - 1u);
    uint32_t keep2 = low | ((keep >> (j + 1)) << j);
    if (std::popcount(keep2) == m) return y;
    return apply(Mono::from_image(m - 1, keep2), y);
  }

  int bound_;
  std::vector<std::vector<std::string>> names_;
  std::vector<std::vector<std::vector<Simplex>>> faces_;
  std::unordered_map<std::string, std::pair<int, int>> index_;
};

/// The opposite simplicial set: d_i becomes d_{n-i}, s_j becomes s_{n-j}.
inline uint32_t reverse_mask(uint32_t mask, int dim) {
  uint32_t r = 0;
  for (int j = 0; j < dim; ++j)
    if (mask >> j & 1u) r |= 1u << (dim - 1 - j);
  return r;
}

inline Simplex opposite_simplex(const Simplex& s) { return Simplex{s.dim, reverse_mask(s.degen, s.dim), s.cell}; }

inline SSet opposite(const SSet& x) {
  SSet y(x.dim_bound());
  for (int d = 0; d <= x.dim_bound(); ++d) {
    for (int c = 0; c < static_cast<int>(x.size(d)); ++c) {
      std::vector<Simplex> f;
      if (d > 0) {
        const auto& src = x.faces(d, c);
        for (int i = 0; i <= d; ++i) f.push_back(opposite_simplex(src[d - i]));
      }
      y.add_cell(d, x.name(d, c), std::move(f));
    }
  }
  return y;
}

/// Result of restricting to a simplicial subset: the subset and, per
/// dimension, the index in the ambient set of each kept cell.
struct SubSSet {
  SSet sset;
  std::vector<std::vector<int>> to_ambient;
  std::vector<std::vector<int>> from_ambient;  // -1 where dropped
};

/// The simplicial subset spanned by the cells for which keep(dim, cell)
/// holds. Throws if the selection is not closed under faces.
template <class Keep>
SubSSet sub_sset(const SSet& x, Keep&& keep) {
  SubSSet r{SSet(x.dim_bound()), {}, {}};
  r.to_ambient.resize(x.dim_bound() + 1);
  r.from_ambient.resize(x.dim_bound() + 1);
  for (int d = 0; d <= x.dim_bound(); ++d) {
    r.from_ambient[d].assign(x.size(d), -1);
    for (int c = 0; c < static_cast<int>(x.size(d)); ++c) {
      if (!keep(d, c)) continue;
      std::vector<Simplex> f;
      if (d > 0) {
        for (Simplex s : x.faces(d, c)) {
          int nc = r.from_ambient[s.cell_dim()][s.cell];
          if (nc < 0) throw PreconditionError("selected cells are not closed under faces at " + x.name(d, c));
          s.cell = nc;
          f.push_back(s);
        }
      }
      r.from_ambient[d][c] = r.sset.add_cell(d, x.name(d, c), std::move(f));
      r.to_ambient[d].push_back(c);
    }
  }
  return r;
}

/// The largest simplicial subset none of whose cells has a vertex in `omit`.
inline SubSSet omit_vertices(const SSet& x, const std::vector<int>& omit) {
  return sub_sset(x, [&](int d, int c) {
    for (int v : x.vertices(x.cell(d, c)))
      if (std::find(omit.begin(), omit.end(), v) != omit.end()) return false;
    return true;
  });
}

/// Lookup of simplices by their vertex sequence. Only meaningful for
/// simplicial sets in which a non-degenerate cell is determined by its
/// vertices (nerves of posets and their products, for instance).
class VertexIndex {
 public:
  explicit VertexIndex(const SSet& x) : x_(&x) {
    for (int d = 0; d <= x.dim_bound(); ++d) {
      for (int c = 0; c < static_cast<int>(x.size(d)); ++c) {
        auto v = x.vertices(x.cell(d, c));
        for (std::size_t j = 1; j < v.size(); ++j)
          if (v[j] == v[j - 1]) throw PreconditionError("non-degenerate cell with a repeated vertex");
        if (!index_.emplace(v, c).second) throw PreconditionError("cells are not determined by their vertices");
      }
    }
  }

  /// The simplex with the given vertex sequence, if any.
  std::optional<Simplex> find(const std::vector<int>& verts) const {
    std::vector<int> core;
    uint32_t mask = 0;
    for (std::size_t j = 0; j < verts.size(); ++j) {
      if (j > 0 && verts[j] == verts[j - 1]) {
        mask |= 1u << (j - 1);
      } else {
        core.push_back(verts[j]);
      }
    }
    auto it = index_.find(core);
    if (it == index_.end()) return std::nullopt;
    return Simplex{static_cast<int>(verts.size()) - 1, mask, it->second};
  }

 private:
  const SSet* x_;
  std::map<std::vector<int>, int> index_;
};

}  // namespace ff

#endif
