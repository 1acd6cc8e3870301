#ifndef FRACTION_FORGE_FRACTIONS_SHAPES_HPP
#define FRACTION_FORGE_FRACTIONS_SHAPES_HPP

#include <bit>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <tuple>
#include <vector>

#include "fraction_forge/marked/marked.hpp"

namespace ff {

enum class Side { L, R };

inline std::string side_name(Side s) { return s == Side::L ? "L" : "R"; }

/// "{0,2}" for the subset with bits 0 and 2.
inline std::string subset_name(uint32_t a) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < 32; ++i)
    if (a >> i & 1u) {
      s += (first ? "" : ",") + std::to_string(i);
      first = false;
    }
  return s + "}";
}

inline int subset_max(uint32_t a) { return 31 - std::countl_zero(a); }
inline int subset_min(uint32_t a) { return std::countr_zero(a); }

/// A marked poset of subsets of [n] together with its nerve. Vertices are
/// ordered by the integer value of the subset bitmask.
struct SubsetPoset {
  int n = 0;
  std::vector<uint32_t> subsets;  // vertex -> subset
  Poset poset;
  MarkedSSet nerve;
  std::unique_ptr<VertexIndex> index;

  int vertex_of(uint32_t a) const {
    for (std::size_t i = 0; i < subsets.size(); ++i)
      if (subsets[i] == a) return static_cast<int>(i);
    return -1;
  }
};

/// Subsets of [n] selected by `keep`, ordered by inclusion (`up`) or
/// reverse inclusion, with edge a < b marked when marked(a, b) holds.
template <class Keep, class Mark>
std::shared_ptr<SubsetPoset> make_subset_poset(int n, bool up, Keep&& keep, Mark&& mark) {
  auto sp = std::make_shared<SubsetPoset>();
  sp->n = n;
  for (uint32_t a = 1; a < (1u << (n + 1)); ++a)
    if (keep(a)) sp->subsets.push_back(a);
  std::vector<std::string> names;
  for (auto a : sp->subsets) names.push_back(subset_name(a));
  const auto& ss = sp->subsets;
  sp->poset = Poset::from(names, [&](int i, int j) {
    uint32_t a = ss[i], b = ss[j];
    return up ? (a & b) == a : (a & b) == b;
  });
  SSet x = nerve_poset(sp->poset);
  std::vector<char> m(x.dim_bound() >= 1 ? x.size(1) : 0, 0);
  for (int e = 0; e < static_cast<int>(m.size()); ++e) {
    auto v = x.vertices(x.cell(1, e));
    m[e] = mark(ss[v[0]], ss[v[1]]) ? 1 : 0;
  }
  sp->nerve = MarkedSSet(std::move(x), std::move(m));
  sp->index = std::make_unique<VertexIndex>(sp->nerve.sset);
  return sp;
}

/// A fraction shape pair J subset I.
struct FractionShape {
  int n = 0;
  int k = 0;
  Side side = Side::L;
  std::shared_ptr<SubsetPoset> big;  // the I shape
  SubSSet small;                     // the J shape inside I
  MarkedSSet small_marked;

  std::string label() const { return side_name(side) + "(" + std::to_string(n) + "," + std::to_string(k) + ")"; }
};

/// L-I^n_k: subsets containing k under inclusion, an edge marked when both
/// ends have the same maximum. R-I^n_k: the same subsets under reverse
/// inclusion, marked when both ends have the same minimum. J omits [n].
inline std::shared_ptr<FractionShape> build_fraction_shape(int n, int k, Side side) {
  if (n < 0 || n > 6 || k < 0 || k > n) throw InputError("shape parameters out of range");
  auto fs = std::make_shared<FractionShape>();
  fs->n = n;
  fs->k = k;
  fs->side = side;
  const uint32_t kbit = 1u << k;
  if (side == Side::L) {
    fs->big = make_subset_poset(
        n, true, [&](uint32_t a) { return (a & kbit) != 0; },
        [](uint32_t a, uint32_t b) { return subset_max(a) == subset_max(b); });
  } else {
    fs->big = make_subset_poset(
        n, false, [&](uint32_t a) { return (a & kbit) != 0; },
        [](uint32_t a, uint32_t b) { return subset_min(a) == subset_min(b); });
  }
  const int top = fs->big->vertex_of((1u << (n + 1)) - 1u);
  fs->small = omit_vertices(fs->big->nerve.sset, {top});
  fs->small_marked = restrict_marking(fs->big->nerve, fs->small);
  return fs;
}

/// Shapes are immutable and shared; the cache is safe for concurrent use.
inline const FractionShape& fraction_shape(int n, int k, Side side) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int>, std::shared_ptr<FractionShape>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(n, k, side == Side::L ? 0 : 1);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_fraction_shape(n, k, side)).first;
  return *it->second;
}

/// The isomorphism (L-I^n_k)^op -> R-I^n_{n-k} induced by i -> n - i.
inline SMap flip_iso(int n, int k) {
  const auto& l = fraction_shape(n, k, Side::L);
  const auto& r = fraction_shape(n, n - k, Side::R);
  SSet lop = opposite(l.big->nerve.sset);
  auto flip = [n](uint32_t a) {
    uint32_t b = 0;
    for (int i = 0; i <= n; ++i)
      if (a >> i & 1u) b |= 1u << (n - i);
    return b;
  };
  // Vertices of the opposite keep their order; simplices reverse their
  // vertex sequence, which the flip turns back into a chain of R.
  SMap f;
  f.img.resize(lop.dim_bound() + 1);
  for (int d = 0; d <= lop.dim_bound(); ++d)
    for (int c = 0; c < static_cast<int>(lop.size(d)); ++c) {
      auto vs = lop.vertices(lop.cell(d, c));
      for (auto& v : vs) v = r.big->vertex_of(flip(l.big->subsets[v]));
      auto t = r.big->index->find(vs);
      if (!t) throw PreconditionError("flip does not carry a chain to a chain");
      f.img[d].push_back(*t);
    }
  return f;
}

/// Lifting data for one shape against a marked simplicial set.
struct LiftWitness {
  int n = 0;
  int k = 0;
  Side side = Side::L;
  SMap j_map;  // a marked map from J with no marked extension over I
};

/// Checks that every marked map J -> X extends to a marked map I -> X.
inline std::optional<LiftWitness> rlp_witness(const MarkedSSet& x, const FractionShape& s) {
  const MarkedSSet& big = s.big->nerve;
  std::optional<LiftWitness> w;
  marked_enumerator(s.small_marked, x).run([&](const SMap& f) {
    auto ext = marked_enumerator(big, x);
    for (int d = 0; d <= s.small.sset.dim_bound(); ++d)
      for (int c = 0; c < static_cast<int>(s.small.sset.size(d)); ++c) ext.fix(d, s.small.to_ambient[d][c], f.img[d][c]);
    if (ext.first()) return true;
    w = LiftWitness{s.n, s.k, s.side, f};
    return false;
  });
  return w;
}

inline bool has_rlp(const MarkedSSet& x, int n, int k, Side side) {
  return !rlp_witness(x, fraction_shape(n, k, side));
}

}  // namespace ff

#endif
