#ifndef FRACTION_FORGE_FRACTIONS_RETRACTS_HPP
#define FRACTION_FORGE_FRACTIONS_RETRACTS_HPP

#include <functional>
#include <string>

#include "fraction_forge/fractions/shapes.hpp"

namespace ff {

enum class RetractKind { Identity, JInSdHorn, KInSd, TopRedundant };

inline std::string retract_kind_name(RetractKind k) {
  switch (k) {
    case RetractKind::Identity: return "identity";
    case RetractKind::JInSdHorn: return "J-in-SdHorn";
    case RetractKind::KInSd: return "Knk-in-Sd";
    case RetractKind::TopRedundant: return "k-eq-n-redundant";
  }
  return "";
}

inline RetractKind parse_retract_kind(const std::string& s) {
  for (auto k : {RetractKind::Identity, RetractKind::JInSdHorn, RetractKind::KInSd, RetractKind::TopRedundant})
    if (retract_kind_name(k) == s) return k;
  throw InputError("unknown retract kind '" + s + "'");
}

struct RetractReport {
  bool ok = true;
  std::string detail;
};

namespace detail {

using SubsetFn = std::function<uint32_t(uint32_t)>;
using SubsetPred = std::function<bool(uint32_t)>;

// The poset map a -> b given on subsets, as a marked map of nerves.
inline bool subset_map_ok(const SubsetPoset& a, const SubsetPoset& b, const SubsetFn& fn, const std::string& what,
                          std::string& why) {
  for (auto s : a.subsets)
    if (b.vertex_of(fn(s)) < 0) {
      why = what + " sends " + subset_name(s) + " outside its target";
      return false;
    }
  SMap f;
  try {
    f = map_from_vertices(a.nerve.sset, *b.index, [&](int v) { return b.vertex_of(fn(a.subsets[v])); });
  } catch (const PreconditionError&) {
    why = what + " is not monotone";
    return false;
  }
  std::string w;
  if (!is_marked_map(a.nerve, b.nerve, f, &w)) {
    why = what + ": " + w;
    return false;
  }
  return true;
}

// J -> I is a retract of J' -> I' through i : I -> I' and r : I' -> I.
// J and J' are full subposets, so checking vertices settles the square.
inline RetractReport check_retract(const SubsetPoset& small_i, const SubsetPred& small_j, const SubsetPoset& big_i,
                                   const SubsetPred& big_j, const SubsetFn& i, const SubsetFn& r) {
  RetractReport rep;
  if (!subset_map_ok(small_i, big_i, i, "the section", rep.detail) ||
      !subset_map_ok(big_i, small_i, r, "the retraction", rep.detail)) {
    rep.ok = false;
    return rep;
  }
  for (auto s : small_i.subsets) {
    if (r(i(s)) != s) return {false, "r i is not the identity at " + subset_name(s)};
    if (small_j(s) && !big_j(i(s))) return {false, "the section does not preserve J at " + subset_name(s)};
  }
  for (auto s : big_i.subsets)
    if (big_j(s) && !small_j(r(s))) return {false, "the retraction does not preserve J at " + subset_name(s)};
  return rep;
}

inline std::shared_ptr<SubsetPoset> sd_plus_simplex(int n) {
  return make_subset_poset(
      n, true, [](uint32_t) { return true; }, [](uint32_t a, uint32_t b) { return subset_max(a) == subset_max(b); });
}

}  // namespace detail

/// Builds the explicit retraction of the given kind and checks that it is
/// a marked map making the retract square commute.
///  identity:          L-J ⊆ L-I retracts onto itself.
///  J-in-SdHorn:       A -> A u {k} from the subdivided horn inclusion.
///  Knk-in-Sd:         [n] - {k} -> [n] retracts the subdivision onto K.
///  k-eq-n-redundant:  L(n,n) from L(n+1,n) via A -> A u {n+1}.
inline RetractReport retract_check(RetractKind kind, int n, int k) {
  if (n < 1 || n > 3) throw BoundError("retract checks are limited to 1 <= n <= 3");
  const uint32_t full = (1u << (n + 1)) - 1u;
  const uint32_t kbit = 1u << k;
  switch (kind) {
    case RetractKind::Identity: {
      if (k < 0 || k > n) throw InputError("k out of range");
      const auto& s = fraction_shape(n, k, Side::L);
      auto j = [full](uint32_t a) { return a != full; };
      auto id = [](uint32_t a) { return a; };
      return detail::check_retract(*s.big, j, *s.big, j, id, id);
    }
    case RetractKind::JInSdHorn: {
      if (k < 0 || k > n) throw InputError("k out of range");
      const auto& s = fraction_shape(n, k, Side::L);
      auto sd = detail::sd_plus_simplex(n);
      auto j = [full](uint32_t a) { return a != full; };
      auto horn = [full, kbit](uint32_t a) { return a != full && a != (full & ~kbit); };
      return detail::check_retract(
          *s.big, j, *sd, horn, [](uint32_t a) { return a; }, [kbit](uint32_t a) { return a | kbit; });
    }
    case RetractKind::KInSd: {
      if (n < 2 || k < 0 || k >= n) throw InputError("the K retraction needs n >= 2 and 0 <= k < n");
      const uint32_t gone = full & ~kbit;
      auto sd = detail::sd_plus_simplex(n);
      auto kk = make_subset_poset(
          n, true, [gone](uint32_t a) { return a != gone; },
          [](uint32_t a, uint32_t b) { return subset_max(a) == subset_max(b); });
      // a retraction of K -> Sd is a retract of the square with J = I
      auto all = [](uint32_t) { return true; };
      return detail::check_retract(
          *kk, all, *sd, all, [](uint32_t a) { return a; }, [gone, full](uint32_t a) { return a == gone ? full : a; });
    }
    case RetractKind::TopRedundant: {
      if (n < 2 || n + 1 > 6) throw InputError("the redundancy retraction needs n >= 2");
      const auto& s = fraction_shape(n, n, Side::L);
      const auto& t = fraction_shape(n + 1, n, Side::L);
      const uint32_t top = 1u << (n + 1), full1 = (1u << (n + 2)) - 1u;
      auto sigma_n = [n, top](uint32_t a) { return (a & ~top) | (1u << n); };
      return detail::check_retract(
          *s.big, [full](uint32_t a) { return a != full; }, *t.big, [full1](uint32_t a) { return a != full1; },
          [top](uint32_t a) { return a | top; },
          [sigma_n, top, n](uint32_t a) { return (a & top) ? sigma_n(a) : (1u << n); });
    }
  }
  return {false, "unknown kind"};
}

}  // namespace ff

#endif
