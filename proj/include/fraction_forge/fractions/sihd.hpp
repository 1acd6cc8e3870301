#ifndef FRACTION_FORGE_FRACTIONS_SIHD_HPP
#define FRACTION_FORGE_FRACTIONS_SIHD_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fraction_forge/fractions/shapes.hpp"
#include "fraction_forge/marked/marked.hpp"

namespace ff {

/// Decomposition data for an inclusion X into Y: for each dimension n,
/// blocks A^n_1..A^n_a(n) and B^n_1..B^n_b(n) of non-degenerate n-cells
/// of Y outside X, and d(n, k) in 1..n-1 for the A blocks. Missing
/// dimensions have no blocks.
struct HornDecomposition {
  std::map<int, std::vector<std::vector<int>>> A;
  std::map<int, std::vector<std::vector<int>>> B;
  std::map<int, std::vector<int>> d;

  int a(int n) const {
    auto it = A.find(n);
    return it == A.end() ? 0 : static_cast<int>(it->second.size());
  }
  int b(int n) const {
    auto it = B.find(n);
    return it == B.end() ? 0 : static_cast<int>(it->second.size());
  }
  bool empty() const {
    for (auto const& [n, v] : A)
      for (auto const& blk : v)
        if (!blk.empty()) return false;
    for (auto const& [n, v] : B)
      for (auto const& blk : v)
        if (!blk.empty()) return false;
    return true;
  }
};

/// An inclusion of marked simplicial sets, described by the codomain and
/// the set of its cells that lie in the image.
struct MarkedInclusion {
  MarkedSSet codomain;
  std::vector<std::vector<char>> in_image;  // per dimension and cell
};

struct DecompositionCheck {
  bool ok = true;
  std::string clause;  // "structure", "(1)", "(2)" or "(3)"
  std::string detail;
};

/// Checks the decomposition clauses. A malformed partition (a cell in two
/// blocks, a missing cell, a cell of the image) throws InputError.
inline DecompositionCheck validate_sihd(const MarkedInclusion& f, const HornDecomposition& dec) {
  const SSet& y = f.codomain.sset;
  const int top = y.top_dim();
  // where[n][cell] = (is_A, block index) or image
  constexpr int kImage = -1, kNone = -2;
  std::vector<std::vector<std::pair<int, int>>> where(y.dim_bound() + 2);
  for (int n = 0; n <= y.dim_bound(); ++n) {
    where[n].assign(y.size(n), {kNone, 0});
    for (int c = 0; c < static_cast<int>(y.size(n)); ++c)
      if (f.in_image.at(n).at(c)) where[n][c] = {kImage, 0};
  }
  auto place = [&](int n, int cell, int is_a, int blk) {
    if (n > y.dim_bound() || cell < 0 || cell >= static_cast<int>(y.size(n)))
      throw InputError("decomposition names a cell that does not exist in dimension " + std::to_string(n));
    auto& w = where[n][cell];
    if (w.first == kImage) throw InputError("malformed partition: cell " + y.name(n, cell) + " lies in the image");
    if (w.first != kNone) throw InputError("malformed partition: cell " + y.name(n, cell) + " lies in two blocks");
    w = {is_a, blk};
  };
  for (auto const& [n, blocks] : dec.A)
    for (int k = 0; k < static_cast<int>(blocks.size()); ++k)
      for (int c : blocks[k]) place(n, c, 1, k + 1);
  for (auto const& [n, blocks] : dec.B)
    for (int k = 0; k < static_cast<int>(blocks.size()); ++k)
      for (int c : blocks[k]) place(n, c, 0, k + 1);
  for (int n = 0; n <= y.dim_bound(); ++n)
    for (int c = 0; c < static_cast<int>(y.size(n)); ++c)
      if (where[n][c].first == kNone)
        throw InputError("malformed partition: cell " + y.name(n, c) + " is neither in the image nor in a block");
  // the image is a simplicial subset
  for (int n = 1; n <= y.dim_bound(); ++n)
    for (int c = 0; c < static_cast<int>(y.size(n)); ++c)
      if (f.in_image[n][c])
        for (auto const& s : y.faces(n, c))
          if (!f.in_image[s.cell_dim()][s.cell]) throw InputError("image is not closed under faces at " + y.name(n, c));

  auto fail = [](std::string clause, std::string detail) { return DecompositionCheck{false, std::move(clause), std::move(detail)}; };
  auto nonempty = [](const std::map<int, std::vector<std::vector<int>>>& m, int n) {
    auto it = m.find(n);
    if (it == m.end()) return false;
    for (auto const& b : it->second)
      if (!b.empty()) return true;
    return false;
  };
  if (nonempty(dec.A, 0) || nonempty(dec.A, 1) || nonempty(dec.B, 0))
    return fail("structure", "A^0, A^1 and B^0 must be empty");
  if (!dec.empty() && dec.b(1) != 1) return fail("structure", "b(1) must be 1");
  for (int n = 1; n <= std::max(top, 1); ++n) {
    if (n + 1 <= top && dec.a(n + 1) != dec.b(n))
      return fail("structure", "a(" + std::to_string(n + 1) + ") != b(" + std::to_string(n) + ")");
    if (n == top && nonempty(dec.B, n)) return fail("structure", "B in the top dimension has nothing to pair with");
  }
  for (auto const& [n, blocks] : dec.A) {
    if (n > top) {
      if (nonempty(dec.A, n)) return fail("structure", "A blocks above the top dimension");
      continue;
    }
    auto dit = dec.d.find(n);
    if (n >= 2 && (dit == dec.d.end() || static_cast<int>(dit->second.size()) != dec.a(n)))
      return fail("structure", "d is not defined on every A block in dimension " + std::to_string(n));
    for (int k = 1; n >= 2 && k <= dec.a(n); ++k) {
      int dk = dit->second[k - 1];
      if (dk < 1 || dk > n - 1) return fail("structure", "d(" + std::to_string(k) + ") is not an inner index");
    }
  }

  // (1) the d(k)-th face is a bijection A^n_k -> B^{n-1}_k
  for (auto const& [n, blocks] : dec.A) {
    if (n < 2) continue;
    for (int k = 1; k <= dec.a(n); ++k) {
      const int dk = dec.d.at(n)[k - 1];
      std::set<int> hit;
      for (int u : blocks[k - 1]) {
        Simplex s = y.faces(n, u)[dk];
        if (s.degenerate()) return fail("(1)", "face " + std::to_string(dk) + " of " + y.name(n, u) + " is degenerate");
        auto w = where[n - 1][s.cell];
        if (w.first != 0 || w.second != k)
          return fail("(1)", "face " + std::to_string(dk) + " of " + y.name(n, u) + " is not in B^" +
                                 std::to_string(n - 1) + "_" + std::to_string(k));
        if (!hit.insert(s.cell).second) return fail("(1)", "two cells of A share the face " + y.name(n - 1, s.cell));
      }
      const auto bsz = dec.b(n - 1) >= k ? dec.B.at(n - 1)[k - 1].size() : 0u;
      if (hit.size() != bsz)
        return fail("(1)", "face map A^" + std::to_string(n) + "_" + std::to_string(k) + " -> B is not onto");
    }
  }
  // (2) marking of A^2_1
  if (dec.a(2) >= 1) {
    for (int u : dec.A.at(2)[0]) {
      Simplex s = y.cell(2, u);
      if (f.codomain.is_marked(y.face(s, 1)) &&
          !(f.codomain.is_marked(y.face(s, 0)) && f.codomain.is_marked(y.face(s, 2))))
        return fail("(2)", "2-cell " + y.name(2, u) + " has marked long edge but an unmarked short edge");
    }
  }
  // (3) the other faces are already present
  for (auto const& [n, blocks] : dec.A) {
    if (n < 2) continue;
    for (int k = 1; k <= dec.a(n); ++k) {
      const int dk = dec.d.at(n)[k - 1];
      for (int u : blocks[k - 1]) {
        for (int i = 0; i <= n; ++i) {
          if (i == dk) continue;
          Simplex s = y.faces(n, u)[i];
          const int p = s.cell_dim();
          auto w = where[p][s.cell];
          bool good = w.first == kImage || w.first == 1 || (w.first == 0 && p < n - 1) ||
                      (w.first == 0 && p == n - 1 && w.second < k);
          if (!good)
            return fail("(3)", "face " + std::to_string(i) + " of " + y.name(n, u) + " is " + y.name(p, s.cell) +
                                   ", which is not yet present");
        }
      }
    }
  }
  return DecompositionCheck{};
}

/// The filtration Y^n_k built from a decomposition; each stage must be
/// closed under faces. Returns the first stage that is not, or "".
inline std::string filtration_gap(const MarkedInclusion& f, const HornDecomposition& dec) {
  const SSet& y = f.codomain.sset;
  std::vector<std::vector<char>> in = f.in_image;
  auto closed = [&]() {
    for (int n = 1; n <= y.dim_bound(); ++n)
      for (int c = 0; c < static_cast<int>(y.size(n)); ++c)
        if (in[n][c])
          for (auto const& s : y.faces(n, c))
            if (!in[s.cell_dim()][s.cell]) return false;
    return true;
  };
  for (int n = 2; n <= y.top_dim(); ++n)
    for (int k = 1; k <= dec.a(n); ++k) {
      if (dec.b(n - 1) >= k)
        for (int c : dec.B.at(n - 1)[k - 1]) in[n - 1][c] = 1;
      for (int c : dec.A.at(n)[k - 1]) in[n][c] = 1;
      if (!closed()) return "Y^" + std::to_string(n) + "_" + std::to_string(k);
    }
  for (auto const& lvl : in)
    for (char c : lvl)
      if (!c) return "colimit";
  return "";
}

/// A decomposition problem: the inclusion and the proposed blocks.
struct DecompositionCase {
  MarkedInclusion inclusion;
  HornDecomposition dec;
};

/// J^n_k inside K^n_k (0 < k < n). K^n_k omits the vertex [n] - {k} from
/// the subdivision of Delta^n; J^n_k is the subdivided horn together with
/// the chains whose first element contains k. Outside J lie the chains
/// ending at [n] whose first element misses k, sorted by where k enters.
inline DecompositionCase build_sihd_jk(int n, int k) {
  if (!(0 < k && k < n)) throw InputError("the J in K decomposition needs 0 < k < n");
  const uint32_t full = (1u << (n + 1)) - 1u, kbit = 1u << k;
  auto sd = make_subset_poset(
      n, true, [&](uint32_t a) { return a != (full & ~kbit); },
      [](uint32_t a, uint32_t b) { return subset_max(a) == subset_max(b); });
  const SSet& y = sd->nerve.sset;
  DecompositionCase dc;
  dc.inclusion.codomain = sd->nerve;
  dc.inclusion.in_image.resize(y.dim_bound() + 1);
  for (int m = 1; m <= y.top_dim(); ++m) {
    dc.dec.B[m].resize(m);
    if (m >= 2) {
      dc.dec.A[m].resize(m - 1);
      for (int j = 1; j <= m - 1; ++j) dc.dec.d[m].push_back(j);
    }
  }
  for (int m = 0; m <= y.dim_bound(); ++m) {
    dc.inclusion.in_image[m].assign(y.size(m), 0);
    for (int c = 0; c < static_cast<int>(y.size(m)); ++c) {
      auto vs = y.vertices(y.cell(m, c));
      std::vector<uint32_t> chain;
      for (int v : vs) chain.push_back(sd->subsets[v]);
      if (chain.back() != full || (chain.front() & kbit)) {
        dc.inclusion.in_image[m][c] = 1;
        continue;
      }
      int j0 = 0;
      while (!(chain[j0] & kbit)) ++j0;
      if (chain[j0] == (chain[j0 - 1] | kbit)) {
        dc.dec.A[m][j0 - 1].push_back(c);
      } else {
        dc.dec.B[m][j0 - 1].push_back(c);
      }
    }
  }
  return dc;
}

/// A marked poset: a poset and a marking of its strict relations.
struct MarkedPoset {
  Poset poset;
  std::vector<std::vector<char>> marked;  // marked[a][b] for a < b
};

/// The marked poset underlying the J part of a fraction shape.
inline MarkedPoset shape_small_poset(const FractionShape& s) {
  MarkedPoset mp;
  const auto& big = *s.big;
  std::vector<int> keep;
  for (int v : s.small.to_ambient[0]) keep.push_back(v);
  std::vector<std::string> names;
  for (int v : keep) names.push_back(big.poset.names[v]);
  mp.poset = Poset::from(names, [&](int a, int b) { return big.poset.le(keep[a], keep[b]); });
  const int m = static_cast<int>(keep.size());
  mp.marked.assign(m, std::vector<char>(m, 0));
  for (int e = 0; e < static_cast<int>(big.nerve.sset.size(1)); ++e) {
    if (!big.nerve.marked[e]) continue;
    auto vs = big.nerve.sset.vertices(big.nerve.sset.cell(1, e));
    auto ia = std::find(keep.begin(), keep.end(), vs[0]);
    auto ib = std::find(keep.begin(), keep.end(), vs[1]);
    if (ia != keep.end() && ib != keep.end()) mp.marked[ia - keep.begin()][ib - keep.begin()] = 1;
  }
  return mp;
}

/// The inclusion of the pushout of P x {1} -> P x Delta^1 and P * Delta^0
/// into (P x [1]) * [0]. Chains outside the image start at some (x, 0)
/// and end at the cone point; they are sorted by the first switch from
/// 0 to 1.
inline DecompositionCase build_sihd_prodjoin(const MarkedPoset& p, const std::vector<char>& q) {
  const int np = p.poset.size();
  if (static_cast<int>(q.size()) != np) throw InputError("Q must be a subset of P");
  // elements: (x, e) at index 2x + e, cone point at 2 np
  const int top = 2 * np;
  std::vector<std::string> names;
  for (int x = 0; x < np; ++x)
    for (int e = 0; e < 2; ++e) names.push_back("(" + p.poset.names[x] + "," + std::to_string(e) + ")");
  names.push_back("T");
  Poset t = Poset::from(names, [&](int a, int b) {
    if (b == top) return true;
    if (a == top) return false;
    return p.poset.le(a / 2, b / 2) && a % 2 <= b % 2;
  });
  SSet y = nerve_poset(t);
  std::vector<char> mk(y.size(1), 0);
  for (int e = 0; e < static_cast<int>(y.size(1)); ++e) {
    auto vs = y.vertices(y.cell(1, e));
    int a = vs[0], b = vs[1];
    if (b == top) {
      mk[e] = q[a / 2];
    } else {
      mk[e] = (a / 2 == b / 2) || p.marked[a / 2][b / 2];
    }
  }
  DecompositionCase dc;
  dc.inclusion.codomain = MarkedSSet(y, std::move(mk));
  const SSet& ys = dc.inclusion.codomain.sset;
  dc.inclusion.in_image.resize(ys.dim_bound() + 1);
  for (int m = 1; m <= ys.top_dim(); ++m) {
    dc.dec.B[m].resize(m);
    if (m >= 2) {
      dc.dec.A[m].resize(m - 1);
      for (int j = 1; j <= m - 1; ++j) dc.dec.d[m].push_back(j);
    }
  }
  for (int m = 0; m <= ys.dim_bound(); ++m) {
    dc.inclusion.in_image[m].assign(ys.size(m), 0);
    for (int c = 0; c < static_cast<int>(ys.size(m)); ++c) {
      auto vs = ys.vertices(ys.cell(m, c));
      if (!(vs.front() != top && vs.front() % 2 == 0 && vs.back() == top)) {
        dc.inclusion.in_image[m][c] = 1;
        continue;
      }
      // first position whose element is (x, 1) or the cone point
      int j0 = 1;
      while (vs[j0] != top && vs[j0] % 2 == 0) ++j0;
      if (vs[j0] != top && vs[j0] / 2 == vs[j0 - 1] / 2) {
        dc.dec.A[m][j0 - 1].push_back(c);
      } else {
        dc.dec.B[m][j0 - 1].push_back(c);
      }
    }
  }
  return dc;
}

}  // namespace ff

#endif
