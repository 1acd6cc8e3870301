#ifndef FRACTION_FORGE_TESTS_BRUTE_MAPS_HPP
#define FRACTION_FORGE_TESTS_BRUTE_MAPS_HPP

// Reference enumeration of simplicial maps: every cell in increasing
// dimension, every candidate image, faces compared once they are known.
// Slow on purpose; used to cross-check the library enumerator.

#include <functional>
#include <vector>

#include "fraction_forge/sset/maps.hpp"

namespace ff::oracle {

inline std::vector<SMap> brute_maps(const SSet& a, const SSet& x) {
  std::vector<std::pair<int, int>> cells;
  for (int d = 0; d <= a.dim_bound(); ++d)
    for (int c = 0; c < static_cast<int>(a.size(d)); ++c) cells.push_back({d, c});
  SMap cur;
  cur.img.resize(a.dim_bound() + 1);
  for (int d = 0; d <= a.dim_bound(); ++d) cur.img[d].resize(a.size(d));
  std::vector<SMap> out;
  std::function<void(std::size_t)> go = [&](std::size_t pos) {
    if (pos == cells.size()) {
      out.push_back(cur);
      return;
    }
    auto [d, c] = cells[pos];
    for (auto const& t : x.all_simplices(d)) {
      bool ok = true;
      for (int i = 0; d > 0 && i <= d && ok; ++i) {
        Simplex f = a.faces(d, c)[i];
        Simplex want = cur.img[f.cell_dim()][f.cell];
        // apply the face's degeneracy to the assigned image
        want = Simplex{d - 1, compose_surj(f.degen, want.degen, d - 1), want.cell};
        ok = want == x.face(t, i);
      }
      if (!ok) continue;
      cur.img[d][c] = t;
      go(pos + 1);
    }
  };
  go(0);
  return out;
}

}  // namespace ff::oracle

#endif
