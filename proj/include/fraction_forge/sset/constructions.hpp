#ifndef FRACTION_FORGE_SSET_CONSTRUCTIONS_HPP
#define FRACTION_FORGE_SSET_CONSTRUCTIONS_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fraction_forge/sset/maps.hpp"
#include "fraction_forge/sset/sset.hpp"

namespace ff {

/// The product X x Y truncated at `bound`. A pair of k-simplices is
/// non-degenerate exactly when their degeneracy masks are disjoint.
struct Product {
  SSet sset;
  std::vector<std::vector<std::pair<Simplex, Simplex>>> pairs;  // pairs[d][cell]
  SMap proj_left;
  SMap proj_right;

  /// The cell of X x Y with the given components, in EZ form.
  Simplex find(const Simplex& s, const Simplex& t) const {
    const int k = s.dim;
    const uint32_t common = s.degen & t.degen;
    auto strip = [&](const Simplex& u) {
      // Remove the common degeneracies: u = u' . sigma(common).
      return Simplex{k - std::popcount(common), strip_mask(u.degen, common, k), u.cell};
    };
    auto it = index_.find({strip(s), strip(t)});
    if (it == index_.end()) throw BoundError("pair of simplices not in the truncated product");
    return Simplex{k, common, it->second};
  }

  std::map<std::pair<Simplex, Simplex>, int> index_;

  // The mask a of u = u'.sigma(common) written over [k]; returns the mask of u'.
  static uint32_t strip_mask(uint32_t mask, uint32_t common, int k) {
    uint32_t r = 0;
    int pos = 0;
    for (int j = 0; j < k; ++j) {
      if (common >> j & 1u) continue;
      if (mask >> j & 1u) r |= 1u << pos;
      ++pos;
    }
    return r;
  }
};

inline Product product(const SSet& x, const SSet& y, int bound = -1) {
  if (bound < 0) bound = std::max(0, x.top_dim() + y.top_dim());
  Product p{SSet(bound), {}, {}, {}, {}};
  p.pairs.resize(bound + 1);
  p.proj_left.img.resize(bound + 1);
  p.proj_right.img.resize(bound + 1);
  for (int k = 0; k <= bound; ++k) {
    auto xs = x.all_simplices(std::min(k, kMaxDim));
    auto ys = y.all_simplices(std::min(k, kMaxDim));
    for (auto const& s : xs) {
      for (auto const& t : ys) {
        if (s.degen & t.degen) continue;
        std::vector<Simplex> faces;
        if (k > 0)
          for (int i = 0; i <= k; ++i) faces.push_back(p.find(x.face(s, i), y.face(t, i)));
        std::string name = "(" + x.describe(s) + "," + y.describe(t) + ")";
        int id = p.sset.add_cell(k, std::move(name), std::move(faces));
        p.index_[{s, t}] = id;
        p.pairs[k].push_back({s, t});
        p.proj_left.img[k].push_back(s);
        p.proj_right.img[k].push_back(t);
      }
    }
  }
  return p;
}

/// The join X * Y. Cells are those of X, those of Y, and pairs (x, y)
/// of dimension dim x + dim y + 1.
struct Join {
  SSet sset;
  std::vector<std::vector<int>> from_left;   // cell of X -> cell of join
  std::vector<std::vector<int>> from_right;  // cell of Y -> cell of join
};

inline Join join(const SSet& x, const SSet& y, int bound = -1) {
  if (bound < 0) bound = x.top_dim() + y.top_dim() + 1;
  bound = std::max(bound, std::max(x.top_dim(), y.top_dim()));
  Join r{SSet(bound), {}, {}};
  r.from_left.resize(x.dim_bound() + 1);
  r.from_right.resize(y.dim_bound() + 1);
  std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, int> pair_index;
  // Cells are added dimension by dimension so faces always exist.
  for (int d = 0; d <= bound; ++d) {
    if (d <= x.dim_bound())
      for (int c = 0; c < static_cast<int>(x.size(d)); ++c) {
        std::vector<Simplex> f;
        if (d > 0)
          for (Simplex u : x.faces(d, c)) {
            u.cell = r.from_left[u.cell_dim()][u.cell];
            f.push_back(u);
          }
        r.from_left[d].push_back(r.sset.add_cell(d, "L:" + x.name(d, c), std::move(f)));
      }
    if (d <= y.dim_bound())
      for (int c = 0; c < static_cast<int>(y.size(d)); ++c) {
        std::vector<Simplex> f;
        if (d > 0)
          for (Simplex u : y.faces(d, c)) {
            u.cell = r.from_right[u.cell_dim()][u.cell];
            f.push_back(u);
          }
        r.from_right[d].push_back(r.sset.add_cell(d, "R:" + y.name(d, c), std::move(f)));
      }
    for (int i = 0; i <= std::min(d - 1, x.dim_bound()); ++i) {
      const int j = d - 1 - i;
      if (j > y.dim_bound()) continue;
      for (int a = 0; a < static_cast<int>(x.size(i)); ++a) {
        for (int b = 0; b < static_cast<int>(y.size(j)); ++b) {
          std::vector<Simplex> f;
          for (int l = 0; l <= d; ++l) {
            if (l <= i) {
              if (i == 0) {
                f.push_back(Simplex{d - 1, 0, r.from_right[j][b]});
              } else {
                Simplex u = x.faces(i, a)[l];
                f.push_back(Simplex{d - 1, u.degen, pair_index.at({{u.cell_dim(), u.cell}, {j, b}})});
              }
            } else {
              if (j == 0) {
                f.push_back(Simplex{d - 1, 0, r.from_left[i][a]});
              } else {
                Simplex u = y.faces(j, b)[l - i - 1];
                f.push_back(Simplex{d - 1, u.degen << (i + 1), pair_index.at({{i, a}, {u.cell_dim(), u.cell}})});
              }
            }
          }
          int id = r.sset.add_cell(d, "(" + x.name(i, a) + "*" + y.name(j, b) + ")", std::move(f));
          pair_index[{{i, a}, {j, b}}] = id;
        }
      }
    }
  }
  return r;
}

}  // namespace ff

#endif
