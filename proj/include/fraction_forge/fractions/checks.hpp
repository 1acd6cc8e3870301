#ifndef FRACTION_FORGE_FRACTIONS_CHECKS_HPP
#define FRACTION_FORGE_FRACTIONS_CHECKS_HPP

#include <optional>
#include <string>
#include <vector>

#include "fraction_forge/fractions/shapes.hpp"
#include "fraction_forge/marked/marked.hpp"

namespace ff {

/// Outcome of a fraction check. `failed` names the first failing
/// condition or shape; `witness` lists the offending data by name.
struct Verdict {
  bool ok = true;
  std::string failed;
  std::vector<std::string> witness;
  std::vector<std::string> checked;
  bool partial = false;
};

namespace detail {

inline Verdict fail(std::string cond, std::vector<std::string> w, std::vector<std::string> checked) {
  return Verdict{false, std::move(cond), std::move(w), std::move(checked), false};
}

// A completion of the span (f, w): f' from cod w and w' in W from cod f
// with f' w = w' f. With `proper`, f' must be marked whenever f is.
inline std::optional<std::pair<int, int>> complete_span(const MarkedCategory& c, int f, int w, bool proper) {
  const FinCategory& k = c.cat;
  for (int wp : k.out_of(k.cod(f))) {
    if (!c.is_marked(wp)) continue;
    int rhs = k.comp[wp][f];
    for (int fp : k.hom(k.cod(w), k.cod(wp))) {
      if (proper && c.is_marked(f) && !c.is_marked(fp)) continue;
      if (k.comp[fp][w] == rhs) return std::make_pair(fp, wp);
    }
  }
  return std::nullopt;
}

inline Verdict left_fractions(const MarkedCategory& c, bool proper) {
  const FinCategory& k = c.cat;
  auto nm = [&](int f) { return k.morphisms[f].name; };
  std::vector<std::string> checked = {"(1)"};
  for (int x = 0; x < k.num_objects(); ++x)
    if (!c.is_marked(k.identity[x])) return fail("(1)", {nm(k.identity[x])}, checked);
  for (int f = 0; f < k.num_morphisms(); ++f) {
    if (!c.is_marked(f)) continue;
    for (int g : k.out_of(k.cod(f)))
      if (c.is_marked(g) && !c.is_marked(k.comp[g][f])) return fail("(1)", {nm(f), nm(g)}, checked);
  }
  const std::string two = proper ? "(2')" : "(2)";
  checked.push_back(two);
  for (int w = 0; w < k.num_morphisms(); ++w) {
    if (!c.is_marked(w)) continue;
    for (int f : k.out_of(k.dom(w)))
      if (!complete_span(c, f, w, proper)) return fail(two, {nm(f), nm(w)}, checked);
  }
  checked.push_back("(3)");
  for (int f = 0; f < k.num_morphisms(); ++f) {
    for (int g : k.hom(k.dom(f), k.cod(f))) {
      if (g <= f) continue;
      std::optional<int> eq;
      for (int w : k.into(k.dom(f)))
        if (c.is_marked(w) && k.comp[f][w] == k.comp[g][w]) {
          eq = w;
          break;
        }
      if (!eq) continue;
      bool found = false;
      for (int v : k.out_of(k.cod(f)))
        if (c.is_marked(v) && k.comp[v][f] == k.comp[v][g]) {
          found = true;
          break;
        }
      if (!found) return fail("(3)", {nm(f), nm(g), nm(*eq)}, checked);
    }
  }
  return Verdict{true, "", {}, checked, false};
}

}  // namespace detail

/// Calculus of left fractions: closure, span completion, coequalization.
inline Verdict check_clf_classical(const MarkedCategory& c) { return detail::left_fractions(c, false); }

/// Left fractions where completions of marked spans stay marked.
inline Verdict check_proper_clf(const MarkedCategory& c) { return detail::left_fractions(c, true); }

/// Right fractions are left fractions of the opposite category.
inline Verdict check_crf_classical(const MarkedCategory& c) { return detail::left_fractions(c.opposite(), false); }
inline Verdict check_proper_crf(const MarkedCategory& c) { return detail::left_fractions(c.opposite(), true); }

/// Result of coequalizing several parallel pairs at once.
struct CoequalizeResult {
  std::optional<int> u;              // marked, with u f_i = u g_i for all i
  std::optional<std::size_t> stuck;  // index of the pair with no coequalizer
};

/// Pairs f_i, g_i : x_i -> y, each equalized by some marked w_i. Builds
/// one marked u with u f_i = u g_i for every i by coequalizing the pairs
/// in turn and composing.
inline CoequalizeResult coequalize_many(const MarkedCategory& c, const std::vector<std::pair<int, int>>& pairs) {
  const FinCategory& k = c.cat;
  if (pairs.empty()) throw PreconditionError("nothing to coequalize");
  const int y = k.cod(pairs[0].first);
  for (auto [f, g] : pairs) {
    if (k.dom(f) != k.dom(g) || k.cod(f) != y || k.cod(g) != y)
      throw PreconditionError("pairs must be parallel with a common target");
    bool has_w = false;
    for (int w : k.into(k.dom(f)))
      if (c.is_marked(w) && k.comp[f][w] == k.comp[g][w]) {
        has_w = true;
        break;
      }
    if (!has_w)
      throw PreconditionError("no marked map equalizes " + k.morphisms[f].name + " and " + k.morphisms[g].name);
  }
  int u = k.identity[y];
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    int f = k.comp[u][pairs[i].first], g = k.comp[u][pairs[i].second];
    if (f == g) continue;
    std::optional<int> step;
    for (int v : k.out_of(k.cod(f)))
      if (c.is_marked(v) && k.comp[v][f] == k.comp[v][g]) {
        step = v;
        break;
      }
    if (!step) return {std::nullopt, i};
    u = k.comp[*step][u];
  }
  return {u, std::nullopt};
}

/// The shapes checked for the infinity version at n <= 3: inner shapes
/// 0 < k <= n on the left, 0 <= k < n on the right.
inline std::vector<std::pair<int, int>> default_shapes(Side side, int max_n = 3) {
  std::vector<std::pair<int, int>> r;
  for (int n = 2; n <= max_n; ++n)
    for (int k = 0; k <= n; ++k)
      if (side == Side::L ? k > 0 : k < n) r.push_back({n, k});
  return r;
}

/// The shapes that suffice for nerves of categories: (2,1), (2,2), (3,1)
/// on the left and their mirrors on the right.
inline std::vector<std::pair<int, int>> sufficient_shapes(Side side) {
  if (side == Side::L) return {{2, 1}, {2, 2}, {3, 1}};
  return {{2, 1}, {2, 0}, {3, 2}};
}

/// Weak closure plus lifting against J subset I for the given shapes.
/// For inputs that are not nerves of categories the verdict is marked
/// partial: only the evaluated shapes are certified.
inline Verdict check_clf_infty(const MarkedSSet& x, Side side, const std::vector<std::pair<int, int>>& shapes,
                               bool is_nerve) {
  Verdict v;
  v.partial = !is_nerve;
  int need = 2;
  for (auto [n, k] : shapes) need = std::max(need, n);
  if (x.sset.dim_bound() < need)
    throw BoundError("lifting against shapes of dimension " + std::to_string(need) + " needs that many levels");
  if (!is_nerve) {
    if (auto w = quasicategory_witness(x.sset, std::min(need, x.sset.dim_bound())))
      throw PreconditionError("input is not a quasicategory: the inner horn Lambda^" + std::to_string(w->n) + "_" +
                              std::to_string(w->k) + " has no filler");
  }
  v.checked.push_back("weakly closed");
  if (auto w = weak_closure_witness(x)) {
    v.ok = false;
    v.failed = "weakly closed";
    for (auto const& s : w->simplices) v.witness.push_back(x.sset.describe(s));
    return v;
  }
  for (auto [n, k] : shapes) {
    const FractionShape& s = fraction_shape(n, k, side);
    v.checked.push_back(s.label());
    if (auto w = rlp_witness(x, s)) {
      v.ok = false;
      v.failed = s.label();
      for (int c = 0; c < static_cast<int>(s.small.sset.size(0)); ++c)
        v.witness.push_back(s.small.sset.name(0, c) + "->" + x.sset.describe(w->j_map.img[0][c]));
      for (int c = 0; c < static_cast<int>(s.small.sset.size(1)); ++c)
        v.witness.push_back(s.small.sset.name(1, c) + "->" + x.sset.describe(w->j_map.img[1][c]));
      return v;
    }
  }
  return v;
}

inline Verdict check_clf_infty(const MarkedSSet& x, bool is_nerve = false) {
  return check_clf_infty(x, Side::L, default_shapes(Side::L), is_nerve);
}

inline Verdict check_crf_infty(const MarkedSSet& x, bool is_nerve = false) {
  return check_clf_infty(x, Side::R, default_shapes(Side::R), is_nerve);
}

}  // namespace ff

#endif
