#ifndef FRACTION_FORGE_DHT_CUBE_HPP
#define FRACTION_FORGE_DHT_CUBE_HPP

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fraction_forge/dht/graph.hpp"

namespace ff {

/// A map from the n-fold box power of the integer line that is constant
/// beyond a finite window, stored as its values on the window
/// [0..m_1] x ... x [0..m_n] (first axis slowest) and extended by
/// clamping. Cubes are kept in trim-normal form: no end slice equals its
/// neighbour. Translations along an axis are identified.
struct StableCube {
  std::vector<int> extent;
  std::vector<int> values;

  int dim() const { return static_cast<int>(extent.size()); }

  std::vector<std::size_t> strides() const {
    std::vector<std::size_t> s(extent.size(), 1);
    for (int i = dim() - 2; i >= 0; --i) s[i] = s[i + 1] * (extent[i + 1] + 1);
    return s;
  }

  /// Value at any integer point.
  int at(const std::vector<int>& p) const {
    std::size_t idx = 0;
    auto s = strides();
    for (int i = 0; i < dim(); ++i) idx += s[i] * std::clamp(p[i], 0, extent[i]);
    return values[idx];
  }

  friend bool operator==(const StableCube&, const StableCube&) = default;
  friend auto operator<=>(const StableCube&, const StableCube&) = default;
};

namespace cube_detail {

inline std::size_t volume(const std::vector<int>& extent) {
  std::size_t v = 1;
  for (int e : extent) v *= static_cast<std::size_t>(e + 1);
  return v;
}

/// Calls f(point) for every point of the window, last axis fastest.
inline void for_each_point(const std::vector<int>& extent, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> p(extent.size(), 0);
  for (std::size_t n = volume(extent); n > 0; --n) {
    f(p);
    for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
      if (p[i] < extent[i]) {
        ++p[i];
        break;
      }
      p[i] = 0;
    }
  }
}

/// The cube on a new window whose value at q is c.at(pull(q)).
inline StableCube tabulate(std::vector<int> extent, const std::function<int(const std::vector<int>&)>& value) {
  StableCube r;
  r.extent = std::move(extent);
  r.values.reserve(volume(r.extent));
  for_each_point(r.extent, [&](const std::vector<int>& q) { r.values.push_back(value(q)); });
  return r;
}

inline bool slices_equal(const StableCube& c, int axis, int a, int b) {
  bool eq = true;
  std::vector<int> ext = c.extent;
  ext[axis] = 0;
  for_each_point(ext, [&](const std::vector<int>& p) {
    if (!eq) return;
    auto pa = p, pb = p;
    pa[axis] = a;
    pb[axis] = b;
    eq = c.at(pa) == c.at(pb);
  });
  return eq;
}

inline void check_axis(const StableCube& c, int i, int lo_extra = 0) {
  if (i < 1 || i > c.dim() + lo_extra)
    throw InputError("cube index " + std::to_string(i) + " out of range for dimension " + std::to_string(c.dim()));
}

}  // namespace cube_detail

inline StableCube vertex_cube(int v) { return StableCube{{}, {v}}; }

/// Removes end slices equal to their neighbours until none is left.
inline StableCube trim(const StableCube& c) {
  StableCube r = c;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int a = 0; a < r.dim(); ++a) {
      int lo = 0, hi = r.extent[a];
      while (lo < hi && cube_detail::slices_equal(r, a, lo, lo + 1)) ++lo;
      while (hi > lo && cube_detail::slices_equal(r, a, hi, hi - 1)) --hi;
      if (lo == 0 && hi == r.extent[a]) continue;
      changed = true;
      auto ext = r.extent;
      ext[a] = hi - lo;
      r = cube_detail::tabulate(ext, [&, a, lo](const std::vector<int>& q) {
        auto p = q;
        p[a] += lo;
        return r.at(p);
      });
    }
  }
  return r;
}

inline bool is_trim_normal(const StableCube& c) { return trim(c) == c; }

/// A walk v_0 .. v_k as a 1-cube.
inline StableCube walk_cube(const std::vector<int>& walk) {
  if (walk.empty()) throw InputError("a walk needs at least one vertex");
  return trim(StableCube{{static_cast<int>(walk.size()) - 1}, walk});
}

/// Adjacent grid points go to adjacent vertices.
inline bool is_graph_cube(const Graph& g, const StableCube& c) {
  if (c.values.size() != cube_detail::volume(c.extent)) return false;
  for (int v : c.values)
    if (v < 0 || v >= g.size()) return false;
  bool ok = true;
  cube_detail::for_each_point(c.extent, [&](const std::vector<int>& p) {
    for (int i = 0; i < c.dim() && ok; ++i) {
      if (p[i] == c.extent[i]) continue;
      auto q = p;
      ++q[i];
      ok = g.adjacent(c.at(p), c.at(q));
    }
  });
  return ok;
}

/// Face (i, eps): the stabilised value layer at the low (eps = 0) or high
/// (eps = 1) end of axis i. 1 <= i <= n.
inline StableCube face(const StableCube& c, int i, int eps) {
  cube_detail::check_axis(c, i);
  const int a = i - 1;
  auto ext = c.extent;
  const int at = eps ? ext[a] : 0;
  ext.erase(ext.begin() + a);
  return trim(cube_detail::tabulate(ext, [&](const std::vector<int>& q) {
    auto p = q;
    p.insert(p.begin() + a, at);
    return c.at(p);
  }));
}

/// Degeneracy i: a new constant axis in position i. 1 <= i <= n + 1.
inline StableCube degeneracy(const StableCube& c, int i) {
  cube_detail::check_axis(c, i, 1);
  StableCube r = c;
  r.extent.insert(r.extent.begin() + (i - 1), 0);
  return r;
}

/// Connection (i, eps): axis i becomes axes i, i + 1, read through max
/// (eps = 0) or min (eps = 1) of the two coordinates. 1 <= i <= n.
inline StableCube connection(const StableCube& c, int i, int eps) {
  cube_detail::check_axis(c, i);
  const int a = i - 1;
  auto ext = c.extent;
  ext.insert(ext.begin() + a, ext[a]);
  return trim(cube_detail::tabulate(ext, [&](const std::vector<int>& q) {
    auto p = q;
    p[a] = eps ? std::min(q[a], q[a + 1]) : std::max(q[a], q[a + 1]);
    p.erase(p.begin() + a + 1);
    return c.at(p);
  }));
}

/// Faces of an open box, keyed by (axis, end).
using BoxFaces = std::map<std::pair<int, int>, StableCube>;

struct FillerResult {
  bool found = false;
  int window = 0;
  StableCube filler;
  std::vector<int> extent_searched;  // largest extents tried when not found
};

namespace cube_detail {

/// Placements of a trimmed walk on [0..m] with constant padding.
inline std::vector<std::vector<int>> placements(const StableCube& w, int m) {
  std::vector<std::vector<int>> out;
  const int k = w.dim() == 0 ? 0 : w.extent[0];
  if (k > m) return out;
  const int slack = k == 0 ? 0 : m - k;
  for (int pad = 0; pad <= slack; ++pad) {
    std::vector<int> row(m + 1);
    for (int t = 0; t <= m; ++t) row[t] = w.dim() == 0 ? w.values[0] : w.at({t - pad});
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace cube_detail

/// Checks that the box faces are graph cubes of dimension n - 1 covering
/// every (axis, end) except the missing one, and agree on shared corners.
inline void check_open_box(const Graph& g, int n, int missing_axis, int missing_end, const BoxFaces& faces) {
  if (n < 1 || n > 2) throw BoundError("open boxes are supported for n <= 2");
  if (missing_axis < 1 || missing_axis > n || (missing_end != 0 && missing_end != 1))
    throw InputError("missing face out of range");
  for (int a = 1; a <= n; ++a)
    for (int e = 0; e <= 1; ++e) {
      const bool want = !(a == missing_axis && e == missing_end);
      auto it = faces.find({a, e});
      if (want != (it != faces.end()))
        throw InputError("face (" + std::to_string(a) + "," + std::to_string(e) + ") " + (want ? "missing from" : "not allowed in") + " the box");
      if (!want) continue;
      if (it->second.dim() != n - 1) throw InputError("box face of the wrong dimension");
      if (!is_graph_cube(g, it->second)) throw InputError("box face is not a graph map");
      if (!is_trim_normal(it->second)) throw InputError("box face is not trim-normal");
    }
  if (faces.size() != static_cast<std::size_t>(2 * n - 1)) throw InputError("unexpected faces in the box");
  if (n == 2)
    for (auto const& [k1, c1] : faces)
      for (auto const& [k2, c2] : faces) {
        if (k1.first != 1 || k2.first != 2) continue;
        // corner (k1.second, k2.second)
        if (face(c1, 1, k2.second) != face(c2, 1, k1.second))
          throw PreconditionError("box faces (1," + std::to_string(k1.second) + ") and (2," + std::to_string(k2.second) + ") disagree at their corner");
      }
}

/// Searches windows up to `window` in each axis for a cube with the given
/// faces. Exhaustion reports the window searched, never non-existence.
inline FillerResult open_box_filler_search(const Graph& g, int n, int missing_axis, int missing_end, const BoxFaces& faces,
                                           int window) {
  check_open_box(g, n, missing_axis, missing_end, faces);
  FillerResult r;
  r.window = window;
  if (n == 1) {
    r.found = true;
    r.filler = degeneracy(faces.begin()->second, 1);
    return r;
  }
  // extents ordered by total size
  std::vector<std::pair<int, int>> sizes;
  for (int m1 = 0; m1 <= window; ++m1)
    for (int m2 = 0; m2 <= window; ++m2) sizes.push_back({m1, m2});
  std::stable_sort(sizes.begin(), sizes.end(), [](auto a, auto b) { return a.first + a.second < b.first + b.second; });
  for (auto [m1, m2] : sizes) {
    const int W = m1 + 1, H = m2 + 1;
    // face (1, e) is a function of axis 2 (length H); face (2, e) of axis 1
    std::vector<std::pair<int, int>> keys;
    std::vector<std::vector<std::vector<int>>> opts;
    bool fits = true;
    for (auto const& [k, c] : faces) {
      keys.push_back(k);
      opts.push_back(cube_detail::placements(c, k.first == 1 ? m2 : m1));
      if (opts.back().empty()) fits = false;
    }
    if (!fits) continue;
    std::vector<int> grid(static_cast<std::size_t>(W) * H, -1);
    std::vector<char> fixed(grid.size(), 0);
    auto cell = [&](int s, int t) -> int& { return grid[static_cast<std::size_t>(s) * H + t]; };
    std::function<bool(std::size_t)> fill_interior = [&](std::size_t idx) -> bool {
      if (idx == grid.size()) return true;
      if (fixed[idx]) return fill_interior(idx + 1);
      const int s = static_cast<int>(idx) / H, t = static_cast<int>(idx) % H;
      std::vector<int> cand;
      for (int v = 0; v < g.size(); ++v) cand.push_back(v);
      auto restrict_to = [&](int s2, int t2) {
        if (s2 < 0 || t2 < 0 || s2 >= W || t2 >= H) return;
        std::size_t j = static_cast<std::size_t>(s2) * H + t2;
        if (!fixed[j] && j >= idx) return;
        const auto& nb = g.closed_neighbors(grid[j]);
        std::vector<int> keep;
        std::set_intersection(cand.begin(), cand.end(), nb.begin(), nb.end(), std::back_inserter(keep));
        cand.swap(keep);
      };
      restrict_to(s - 1, t);
      restrict_to(s, t - 1);
      restrict_to(s + 1, t);
      restrict_to(s, t + 1);
      for (int v : cand) {
        grid[idx] = v;
        if (fill_interior(idx + 1)) return true;
      }
      grid[idx] = -1;
      return false;
    };
    std::vector<std::size_t> choice(keys.size(), 0);
    std::function<bool(std::size_t)> place = [&](std::size_t q) -> bool {
      if (q == keys.size()) {
        // fixed cells must themselves form a graph map along the boundary
        for (std::size_t j = 0; j < grid.size(); ++j) {
          if (!fixed[j]) continue;
          const int s = static_cast<int>(j) / H, t = static_cast<int>(j) % H;
          if (s + 1 < W && fixed[j + H] && !g.adjacent(grid[j], grid[j + H])) return false;
          if (t + 1 < H && fixed[j + 1] && !g.adjacent(grid[j], grid[j + 1])) return false;
        }
        return fill_interior(0);
      }
      auto [axis, end] = keys[q];
      for (auto const& row : opts[q]) {
        std::vector<std::size_t> set_here;
        bool ok = true;
        const int len = static_cast<int>(row.size());
        for (int u = 0; u < len && ok; ++u) {
          int s = axis == 1 ? (end ? m1 : 0) : u;
          int t = axis == 1 ? u : (end ? m2 : 0);
          std::size_t j = static_cast<std::size_t>(s) * H + t;
          if (fixed[j]) {
            ok = grid[j] == row[u];
          } else {
            fixed[j] = 1;
            grid[j] = row[u];
            set_here.push_back(j);
          }
        }
        if (ok && place(q + 1)) return true;
        for (std::size_t j : set_here) {
          fixed[j] = 0;
          grid[j] = -1;
        }
      }
      return false;
    };
    if (!place(0)) continue;
    StableCube c{{m1, m2}, grid};
    if (!is_graph_cube(g, c)) throw InvariantError("filler search produced a non-map");
    for (auto const& [k, f] : faces)
      if (face(c, k.first, k.second) != f) throw InvariantError("filler has a wrong face");
    r.found = true;
    r.filler = trim(c);
    return r;
  }
  r.extent_searched = {window, window};
  return r;
}

}  // namespace ff

#endif
