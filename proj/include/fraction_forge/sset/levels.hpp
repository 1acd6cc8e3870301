#ifndef FRACTION_FORGE_SSET_LEVELS_HPP
#define FRACTION_FORGE_SSET_LEVELS_HPP

#include <string>
#include <vector>

#include "fraction_forge/sset/sset.hpp"

namespace ff {

/// A truncated simplicial set given by all of its simplices, degenerate
/// ones included, with face and degeneracy maps on element indices.
struct Levels {
  int bound = 0;
  std::vector<std::vector<std::string>> names;
  std::vector<std::vector<std::vector<int>>> face;   // face[n][e][i], n >= 1
  std::vector<std::vector<std::vector<int>>> degen;  // degen[n][e][j], n < bound

  std::size_t size(int n) const { return names.at(n).size(); }
};

/// The Eilenberg-Zilber presentation of a levelwise simplicial set.
struct LevelsSSet {
  SSet sset;
  std::vector<std::vector<Simplex>> ez;  // ez[n][e]
};

/// Finds the non-degenerate elements (those outside the image of every
/// degeneracy) and stores each level element in normal form.
inline LevelsSSet to_sset(const Levels& lv) {
  LevelsSSet r{SSet(lv.bound), {}};
  r.ez.resize(lv.bound + 1);
  for (int n = 0; n <= lv.bound; ++n) {
    const int count = static_cast<int>(lv.size(n));
    std::vector<std::pair<int, int>> source(count, {-1, -1});
    if (n > 0) {
      for (int z = 0; z < static_cast<int>(lv.size(n - 1)); ++z)
        for (int j = 0; j < n; ++j) {
          int e = lv.degen.at(n - 1).at(z).at(j);
          if (source[e].first < 0) source[e] = {j, z};
        }
    }
    r.ez[n].resize(count);
    for (int e = 0; e < count; ++e) {
      if (source[e].first >= 0) {
        r.ez[n][e] = degenerate(r.ez[n - 1][source[e].second], source[e].first);
        continue;
      }
      std::vector<Simplex> faces;
      if (n > 0)
        for (int i = 0; i <= n; ++i) faces.push_back(r.ez[n - 1].at(lv.face[n][e][i]));
      int id = r.sset.add_cell(n, lv.names[n][e], std::move(faces));
      r.ez[n][e] = Simplex{n, 0, id};
    }
  }
  return r;
}

/// Checks the simplicial identities of a levelwise presentation.
inline void check_levels(const Levels& lv) {
  auto fail = [](const std::string& what) { throw InputError("simplicial identity fails: " + what); };
  for (int n = 2; n <= lv.bound; ++n)
    for (int e = 0; e < static_cast<int>(lv.size(n)); ++e)
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (lv.face[n - 1][lv.face[n][e][j]][i] != lv.face[n - 1][lv.face[n][e][i]][j - 1]) fail("d d");
  for (int n = 0; n < lv.bound; ++n)
    for (int e = 0; e < static_cast<int>(lv.size(n)); ++e)
      for (int j = 0; j <= n; ++j) {
        int s = lv.degen[n][e][j];
        if (lv.face[n + 1][s][j] != e || lv.face[n + 1][s][j + 1] != e) fail("d s = id");
        for (int i = 0; i <= n + 1; ++i) {
          if (i == j || i == j + 1 || n == 0) continue;
          int lhs = lv.face[n + 1][s][i];
          int rhs = i < j ? lv.degen[n - 1][lv.face[n][e][i]][j - 1] : lv.degen[n - 1][lv.face[n][e][i - 1]][j];
          if (lhs != rhs) fail("d s");
        }
      }
}

}  // namespace ff

#endif
