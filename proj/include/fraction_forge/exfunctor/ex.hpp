#ifndef FRACTION_FORGE_EXFUNCTOR_EX_HPP
#define FRACTION_FORGE_EXFUNCTOR_EX_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fraction_forge/exfunctor/subdivision.hpp"
#include "fraction_forge/sset/levels.hpp"

namespace ff {

/// Levels 0..bound of Ex_+(X, W) (side L) or its dual (side R): the
/// marked maps sd[m] -> X, with faces and degeneracies by precomposition.
struct ExLevels {
  Side side = Side::L;
  int bound = 0;
  std::vector<std::vector<SMap>> maps;  // maps[m][e] : sd[m] -> X
  Levels levels;
  LevelsSSet ez;  // the truncation as a simplicial set

  const SSet& sset() const { return ez.sset; }
  std::size_t size(int m) const { return maps.at(m).size(); }

  int find(int m, const SMap& f) const {
    auto it = index.at(m).find(f);
    return it == index[m].end() ? -1 : it->second;
  }

  std::vector<std::unordered_map<SMap, int, SMapHash>> index;
};

namespace ex_detail {

// The edges of sd[m] in order pin down the map for nerves; elsewhere a
// suffix keeps names unique.
inline std::string element_name(const MarkedSSet& x, const SMap& f, int m) {
  if (m == 0) return x.sset.describe(f.img[0][0]);
  std::string s = "(";
  for (std::size_t e = 0; e < f.img[1].size(); ++e) s += (e ? "," : "") + x.sset.describe(f.img[1][e]);
  return s + ")";
}

}  // namespace ex_detail

inline ExLevels ex_levels(const MarkedSSet& x, int bound, Side side = Side::L) {
  if (bound < 0 || bound > kMaxSubdivision) throw BoundError("Ex levels are limited to 0..3");
  if (x.sset.dim_bound() < bound)
    throw BoundError("level " + std::to_string(bound) + " needs the input up to dimension " + std::to_string(bound));
  ExLevels ex;
  ex.side = side;
  ex.bound = bound;
  ex.maps.resize(bound + 1);
  ex.index.resize(bound + 1);
  Levels& lv = ex.levels;
  lv.bound = bound;
  lv.names.resize(bound + 1);
  lv.face.resize(bound + 1);
  lv.degen.resize(bound + 1);
  for (int m = 0; m <= bound; ++m) {
    const auto& sd = subdivision(m, side);
    ex.maps[m] = enumerate_marked_maps(sd.nerve, x);
    std::map<std::string, int> seen;
    for (int e = 0; e < static_cast<int>(ex.maps[m].size()); ++e) {
      ex.index[m].emplace(ex.maps[m][e], e);
      std::string n = ex_detail::element_name(x, ex.maps[m][e], m);
      int c = seen[n]++;
      lv.names[m].push_back(c == 0 ? n : n + "#" + std::to_string(c));
    }
  }
  for (int m = 1; m <= bound; ++m) {
    lv.face[m].resize(ex.size(m));
    for (int i = 0; i <= m; ++i) {
      SMap d = subdivision_map(Mono::coface(m, i), side);
      for (int e = 0; e < static_cast<int>(ex.size(m)); ++e) {
        int t = ex.find(m - 1, compose(ex.maps[m][e], d));
        if (t < 0) throw PreconditionError("face of an Ex element is not a marked map");
        lv.face[m][e].push_back(t);
      }
    }
  }
  for (int m = 0; m < bound; ++m) {
    lv.degen[m].resize(ex.size(m));
    for (int j = 0; j <= m; ++j) {
      SMap s = subdivision_map(Mono::codegeneracy(m, j), side);
      for (int e = 0; e < static_cast<int>(ex.size(m)); ++e) {
        int t = ex.find(m + 1, compose(ex.maps[m][e], s));
        if (t < 0) throw PreconditionError("degeneracy of an Ex element is not a marked map");
        lv.degen[m][e].push_back(t);
      }
    }
  }
  check_levels(lv);
  ex.ez = to_sset(lv);
  return ex;
}

inline ExLevels ex_plus(const MarkedSSet& x, int bound) { return ex_levels(x, bound, Side::L); }
inline ExLevels ex_op(const MarkedSSet& x, int bound) { return ex_levels(x, bound, Side::R); }

/// The unit X -> Ex_+ X sending an m-simplex u to u o max (side L) or
/// u o min (side R). unit[m][k] is the level-m index of the k-th entry of
/// x.all_simplices(m).
inline std::vector<std::vector<int>> ex_unit(const MarkedSSet& x, const ExLevels& ex) {
  std::vector<std::vector<int>> unit(ex.bound + 1);
  for (int m = 0; m <= ex.bound; ++m) {
    const auto& sd = subdivision(m, ex.side);
    for (auto const& u : x.sset.all_simplices(m)) {
      SMap f;
      f.img.resize(sd.nerve.sset.dim_bound() + 1);
      for (int d = 0; d <= sd.nerve.sset.dim_bound(); ++d)
        for (int c = 0; c < static_cast<int>(sd.nerve.sset.size(d)); ++c) {
          std::vector<int> vals;
          for (int v : sd.nerve.sset.vertices(sd.nerve.sset.cell(d, c))) {
            uint32_t a = sd.subsets[v];
            vals.push_back(ex.side == Side::L ? subset_max(a) : subset_min(a));
          }
          f.img[d].push_back(x.sset.apply(Mono::from_values(m, vals), u));
        }
      int t = ex.find(m, f);
      if (t < 0) throw PreconditionError("u o max is not a marked map");
      unit[m].push_back(t);
    }
  }
  return unit;
}

/// Ex_+(g) for a marked map g : X -> Y, on the computed levels.
inline std::vector<std::vector<int>> ex_map(const ExLevels& ex_x, const ExLevels& ex_y, const SMap& g) {
  std::vector<std::vector<int>> r(ex_x.bound + 1);
  for (int m = 0; m <= ex_x.bound; ++m)
    for (auto const& f : ex_x.maps[m]) {
      int t = ex_y.find(m, compose(g, f));
      if (t < 0) throw PreconditionError("image of an Ex element is missing");
      r[m].push_back(t);
    }
  return r;
}

/// First unfillable horn of the given shape in the truncation, if any.
inline std::optional<HornWitness> ex_horn_witness(const ExLevels& ex, int n, int k) {
  if (n > ex.bound) throw BoundError("horn dimension above the computed Ex levels");
  return unfillable_horn(ex.sset(), n, k);
}

}  // namespace ff

#endif
