#ifndef FRACTION_FORGE_EXFUNCTOR_SUBDIVISION_HPP
#define FRACTION_FORGE_EXFUNCTOR_SUBDIVISION_HPP

#include <algorithm>
#include <bit>
#include <map>
#include <memory>
#include <functional>
#include <mutex>
#include <string>
#include <vector>

#include "fraction_forge/fractions/shapes.hpp"

namespace ff {

inline constexpr int kMaxSubdivision = 3;

/// sd_+[n]: non-empty subsets of [n] under inclusion, edge marked when
/// the maximum is kept. The dual sd_op[n] reverses the order and marks
/// edges that keep the minimum.
inline std::shared_ptr<SubsetPoset> build_subdivision(int n, Side side) {
  if (n < 0 || n > kMaxSubdivision + 1) throw BoundError("subdivisions are limited to n <= 4");
  auto all = [](uint32_t) { return true; };
  if (side == Side::L)
    return make_subset_poset(n, true, all, [](uint32_t a, uint32_t b) { return subset_max(a) == subset_max(b); });
  return make_subset_poset(n, false, all, [](uint32_t a, uint32_t b) { return subset_min(a) == subset_min(b); });
}

inline const SubsetPoset& subdivision(int n, Side side) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<SubsetPoset>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(n, side == Side::L ? 0 : 1);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_subdivision(n, side)).first;
  return *it->second;
}

inline const SubsetPoset& sd_plus(int n) { return subdivision(n, Side::L); }
inline const SubsetPoset& sd_op(int n) { return subdivision(n, Side::R); }

/// theta(A) for a monotone map theta and a subset A of its source.
inline uint32_t image_of_subset(const Mono& th, uint32_t a) {
  uint32_t r = 0;
  for (int i = 0; i <= th.src; ++i)
    if (a >> i & 1u) r |= 1u << th.v[i];
  return r;
}

/// The induced map sd[src] -> sd[tgt], A -> theta(A).
inline SMap subdivision_map(const Mono& th, Side side) {
  const auto& a = subdivision(th.src, side);
  const auto& b = subdivision(th.tgt, side);
  return map_from_vertices(a.nerve.sset, *b.index,
                           [&](int v) { return b.vertex_of(image_of_subset(th, a.subsets[v])); });
}

/// Sd_+ X computed cell by cell. Every simplex of the colimit is a pair
/// (u, c) with u a non-degenerate m-cell and c a strict chain of subsets
/// of [m] ending at [m]; a face that no longer reaches [m] is moved to
/// the face of u it spans and renormalized.
struct Subdivided {
  MarkedSSet marked;
  std::vector<std::vector<std::pair<Simplex, std::vector<uint32_t>>>> cells;  // per dimension: (u, chain)
};

inline std::string chain_name(const std::vector<uint32_t>& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "<" : "") + subset_name(c[i]);
  return s;
}

inline Subdivided subdivide(const SSet& x, int bound) {
  if (x.top_dim() > kMaxDim - 1) throw BoundError("input too large to subdivide");
  Subdivided r;
  SSet out(bound);
  r.cells.resize(bound + 1);
  std::map<std::pair<std::pair<int, int>, std::vector<uint32_t>>, int> index;  // ((dim u, cell u), chain)

  // normal form of (u, chain) with u a non-degenerate m-cell; the chain
  // may be non-strict
  auto normalize = [&](int m, int u, std::vector<uint32_t> chain) -> Simplex {
    uint32_t span = 0;
    for (auto a : chain) span |= a;
    Simplex su = x.apply(Mono::from_image(m, span), x.cell(m, u));
    const int p = std::popcount(span) - 1;
    // reindex into [p], then push through the degeneracy of su
    Mono sigma;
    sigma.src = p;
    sigma.tgt = su.cell_dim();
    for (int j = 0; j <= p; ++j) sigma.v[j] = static_cast<int8_t>(surj_value(su.degen, j));
    Mono incl = Mono::from_image(m, span);
    std::vector<uint32_t> c2;
    uint32_t mask = 0;
    const int k = static_cast<int>(chain.size()) - 1;
    for (int i = 0; i <= k; ++i) {
      uint32_t local = 0;
      for (int j = 0; j <= p; ++j)
        if (chain[i] >> incl.v[j] & 1u) local |= 1u << j;
      uint32_t img = image_of_subset(sigma, local);
      if (!c2.empty() && c2.back() == img) {
        mask |= 1u << (i - 1);
      } else {
        c2.push_back(img);
      }
    }
    auto it = index.find({{su.cell_dim(), su.cell}, c2});
    if (it == index.end()) throw PreconditionError("subdivision face outside the computed range");
    return Simplex{k, mask, it->second};
  };

  for (int d = 0; d <= bound; ++d) {
    for (int m = 0; m <= x.top_dim(); ++m) {
      const uint32_t full = (1u << (m + 1)) - 1u;
      for (int u = 0; u < static_cast<int>(x.size(m)); ++u) {
        // strict chains of length d + 1 ending at [m]
        std::vector<std::vector<uint32_t>> chains;
        std::vector<uint32_t> cur;
        std::function<void(int)> go = [&](int left) {
          if (left == 0) {
            auto c = cur;
            c.push_back(full);
            chains.push_back(c);
            return;
          }
          const uint32_t above = cur.empty() ? 0u : cur.back();
          for (uint32_t a = 1; a < full; ++a) {
            if ((a & above) != above || a == above) continue;
            cur.push_back(a);
            go(left - 1);
            cur.pop_back();
          }
        };
        go(d);
        std::sort(chains.begin(), chains.end());
        for (auto const& c : chains) {
          std::vector<Simplex> faces;
          if (d > 0)
            for (int i = 0; i <= d; ++i) {
              auto f = c;
              f.erase(f.begin() + i);
              faces.push_back(normalize(m, u, f));
            }
          const std::string name = x.name(m, u) + ":" + chain_name(c);
          int id = out.add_cell(d, name, std::move(faces));
          index[{{m, u}, c}] = id;
          r.cells[d].push_back({Simplex{m, 0, u}, c});
        }
      }
    }
  }
  std::vector<char> mk(bound >= 1 ? out.size(1) : 0, 0);
  for (int e = 0; e < static_cast<int>(mk.size()); ++e) {
    auto const& c = r.cells[1][e].second;
    mk[e] = subset_max(c[0]) == subset_max(c[1]) ? 1 : 0;
  }
  r.marked = MarkedSSet(std::move(out), std::move(mk));
  return r;
}

/// The dual subdivision, through opposites.
inline MarkedSSet subdivide_op(const SSet& x, int bound) { return opposite(subdivide(opposite(x), bound).marked); }

}  // namespace ff

#endif
