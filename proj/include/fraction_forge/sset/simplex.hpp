#ifndef FRACTION_FORGE_SSET_SIMPLEX_HPP
#define FRACTION_FORGE_SSET_SIMPLEX_HPP

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fraction_forge/error.hpp"

namespace ff {

/// Largest simplex dimension the library handles.
inline constexpr int kMaxDim = 15;

/// A monotone map [src] -> [tgt].
struct Mono {
  int src = 0;
  int tgt = 0;
  std::array<int8_t, kMaxDim + 1> v{};

  int operator()(int j) const { return v[j]; }

  static Mono identity(int n) {
    Mono m;
    m.src = m.tgt = n;
    for (int j = 0; j <= n; ++j) m.v[j] = static_cast<int8_t>(j);
    return m;
  }

  /// The coface delta_i : [n-1] -> [n] skipping i.
  static Mono coface(int n, int i) {
    if (n < 1 || n > kMaxDim || i < 0 || i > n) throw InputError("coface index out of range");
    Mono m;
    m.src = n - 1;
    m.tgt = n;
    for (int j = 0; j < n; ++j) m.v[j] = static_cast<int8_t>(j < i ? j : j + 1);
    return m;
  }

  /// The codegeneracy sigma_j : [n+1] -> [n] hitting j twice.
  static Mono codegeneracy(int n, int j) {
    if (n + 1 > kMaxDim || j < 0 || j > n) throw InputError("codegeneracy index out of range");
    Mono m;
    m.src = n + 1;
    m.tgt = n;
    for (int r = 0; r <= n + 1; ++r) m.v[r] = static_cast<int8_t>(r <= j ? r : r - 1);
    return m;
  }

  /// The constant map [0] -> [n] at i.
  static Mono point(int n, int i) {
    Mono m;
    m.src = 0;
    m.tgt = n;
    m.v[0] = static_cast<int8_t>(i);
    return m;
  }

  static Mono from_values(int tgt, const std::vector<int>& vals) {
    if (vals.empty() || static_cast<int>(vals.size()) > kMaxDim + 1)
      throw InputError("monotone map of unsupported size");
    Mono m;
    m.src = static_cast<int>(vals.size()) - 1;
    m.tgt = tgt;
    for (std::size_t j = 0; j < vals.size(); ++j) {
      if (vals[j] < 0 || vals[j] > tgt || (j > 0 && vals[j] < vals[j - 1]))
        throw InputError("values do not define a monotone map");
      m.v[j] = static_cast<int8_t>(vals[j]);
    }
    return m;
  }

  /// The injection [p] -> [tgt] whose image is the set bits of `image`.
  static Mono from_image(int tgt, uint32_t image) {
    Mono m;
    m.tgt = tgt;
    int p = 0;
    for (int i = 0; i <= tgt; ++i)
      if (image >> i & 1u) m.v[p++] = static_cast<int8_t>(i);
    m.src = p - 1;
    return m;
  }

  /// after o this
  Mono then(const Mono& after) const {
    Mono m;
    m.src = src;
    m.tgt = after.tgt;
    for (int j = 0; j <= src; ++j) m.v[j] = after.v[v[j]];
    return m;
  }

  uint32_t image() const {
    uint32_t s = 0;
    for (int j = 0; j <= src; ++j) s |= 1u << v[j];
    return s;
  }

  bool operator==(const Mono& o) const {
    if (src != o.src || tgt != o.tgt) return false;
    for (int j = 0; j <= src; ++j)
      if (v[j] != o.v[j]) return false;
    return true;
  }
};

/// Value at j of the monotone surjection [k] -> [k - popcount(mask)]
/// whose repeated positions are the set bits of `mask`.
inline int surj_value(uint32_t mask, int j) {
  return j - std::popcount(mask & ((1u << j) - 1u));
}

/// Mask of tau o sigma where sigma : [k] -> [p] has mask `a` and
/// tau : [p] -> [q] has mask `b`.
inline uint32_t compose_surj(uint32_t a, uint32_t b, int k) {
  uint32_t c = 0;
  for (int j = 0; j < k; ++j) {
    if (a >> j & 1u) {
      c |= 1u << j;
    } else if (b >> surj_value(a, j) & 1u) {
      c |= 1u << j;
    }
  }
  return c;
}

/// Mask of the surjection part of an arbitrary monotone map, together
/// with its image: theta = inclusion(image) o surjection(mask).
inline std::pair<uint32_t, uint32_t> factor(const Mono& th) {
  uint32_t mask = 0;
  for (int j = 0; j < th.src; ++j)
    if (th.v[j] == th.v[j + 1]) mask |= 1u << j;
  return {mask, th.image()};
}

/// A simplex in Eilenberg-Zilber form: a degeneracy applied to a
/// non-degenerate cell of dimension dim - popcount(degen).
struct Simplex {
  int dim = 0;
  uint32_t degen = 0;
  int cell = -1;

  int cell_dim() const { return dim - std::popcount(degen); }
  bool degenerate() const { return degen != 0; }

  auto operator<=>(const Simplex&) const = default;
  bool operator==(const Simplex&) const = default;
};

/// Degeneracy words are strictly decreasing index lists j1 > j2 > ...,
/// read as s_{j1} s_{j2} ... x. The set of indices is the set of
/// repeated positions of the underlying surjection.
inline uint32_t word_to_mask(const std::vector<int>& word, int dim) {
  uint32_t mask = 0;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i > 0 && word[i] >= word[i - 1])
      throw InputError("degeneracy word must be strictly decreasing");
    if (word[i] < 0 || word[i] >= dim)
      throw InputError("degeneracy index " + std::to_string(word[i]) + " out of range for dimension " +
                       std::to_string(dim));
    mask |= 1u << word[i];
  }
  return mask;
}

inline std::vector<int> mask_to_word(uint32_t mask) {
  std::vector<int> w;
  for (int j = 31; j >= 0; --j)
    if (mask >> j & 1u) w.push_back(j);
  return w;
}

/// Apply s_j to a simplex given only its Eilenberg-Zilber data.
inline Simplex degenerate(const Simplex& s, int j) {
  if (j < 0 || j > s.dim) throw InputError("degeneracy index out of range");
  // sigma_j : [dim+1] -> [dim] has the single repeated position j.
  return Simplex{s.dim + 1, compose_surj(1u << j, s.degen, s.dim + 1), s.cell};
}

/// Apply the surjection with mask `mask` (from [k]) to a simplex.
inline Simplex degenerate_by(const Simplex& s, uint32_t mask, int k) {
  return Simplex{k, compose_surj(mask, s.degen, k), s.cell};
}

struct SimplexHash {
  std::size_t operator()(const Simplex& s) const noexcept {
    std::size_t h = static_cast<std::size_t>(s.cell) * 1000003u;
    h ^= static_cast<std::size_t>(s.degen) * 7919u + static_cast<std::size_t>(s.dim);
    return h;
  }
};

inline void hash_combine(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

}  // namespace ff

#endif
