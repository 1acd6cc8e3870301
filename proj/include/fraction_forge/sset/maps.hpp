#ifndef FRACTION_FORGE_SSET_MAPS_HPP
#define FRACTION_FORGE_SSET_MAPS_HPP

#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fraction_forge/sset/sset.hpp"

namespace ff {

/// A simplicial map, given by the image of every non-degenerate cell.
struct SMap {
  std::vector<std::vector<Simplex>> img;  // img[dim][cell]

  bool operator==(const SMap&) const = default;
};

struct SMapHash {
  std::size_t operator()(const SMap& f) const noexcept {
    std::size_t h = 0;
    SimplexHash sh;
    for (auto const& v : f.img)
      for (auto const& s : v) hash_combine(h, sh(s));
    return h;
  }
};

/// Image of an arbitrary simplex of the source.
inline Simplex image(const SMap& f, const Simplex& s) {
  return degenerate_by(f.img.at(s.cell_dim()).at(s.cell), s.degen, s.dim);
}

inline SMap identity_map(const SSet& a) {
  SMap f;
  f.img.resize(a.dim_bound() + 1);
  for (int d = 0; d <= a.dim_bound(); ++d)
    for (int c = 0; c < static_cast<int>(a.size(d)); ++c) f.img[d].push_back(a.cell(d, c));
  return f;
}

/// g o f
inline SMap compose(const SMap& g, const SMap& f) {
  SMap h;
  h.img.resize(f.img.size());
  for (std::size_t d = 0; d < f.img.size(); ++d)
    for (auto const& s : f.img[d]) h.img[d].push_back(image(g, s));
  return h;
}

/// Checks that f commutes with faces. On failure writes a reason.
inline bool is_simplicial_map(const SSet& a, const SSet& x, const SMap& f, std::string* why = nullptr) {
  if (static_cast<int>(f.img.size()) < a.dim_bound() + 1) {
    if (why) *why = "map does not cover every dimension";
    return false;
  }
  for (int d = 0; d <= a.dim_bound(); ++d) {
    if (f.img[d].size() != a.size(d)) {
      if (why) *why = "map does not cover every cell in dimension " + std::to_string(d);
      return false;
    }
    for (int c = 0; c < static_cast<int>(a.size(d)); ++c) {
      const Simplex t = f.img[d][c];
      if (t.dim != d || t.cell_dim() > x.dim_bound() || t.cell < 0 ||
          t.cell >= static_cast<int>(x.size(t.cell_dim()))) {
        if (why) *why = "image of " + a.name(d, c) + " is not a simplex of the target";
        return false;
      }
      if (d == 0) continue;
      for (int i = 0; i <= d; ++i) {
        if (image(f, a.faces(d, c)[i]) != x.face(t, i)) {
          if (why) *why = "face " + std::to_string(i) + " of " + a.name(d, c) + " is not preserved";
          return false;
        }
      }
    }
  }
  return true;
}

/// The section of a degeneracy surjection picking first preimages.
inline Mono first_section(uint32_t mask, int k) {
  std::vector<int> vals;
  for (int j = 0; j <= k; ++j)
    if (j == 0 || !(mask >> (j - 1) & 1u)) vals.push_back(j);
  return Mono::from_values(k, vals);
}

/// Backtracking enumeration of simplicial maps A -> X. Cells are visited
/// top dimension first; an assigned image fixes the images of all faces,
/// and conflicts prune the branch. The visiting order is deterministic.
class MapEnumerator {
 public:
  using Predicate = std::function<bool(int dim, int cell, const Simplex& image)>;

  MapEnumerator(const SSet& a, const SSet& x) : a_(a), x_(x) {
    if (a.top_dim() > x.dim_bound())
      throw BoundError("source has cells in dimension " + std::to_string(a.top_dim()) + " above target bound " +
                       std::to_string(x.dim_bound()));
    asg_.resize(a.dim_bound() + 1);
    for (int d = 0; d <= a.dim_bound(); ++d) asg_[d].assign(a.size(d), Simplex{-1, 0, -1});
    for (int d = a.dim_bound(); d >= 0; --d)
      for (int c = 0; c < static_cast<int>(a.size(d)); ++c) order_.push_back({d, c});
  }

  /// Prescribes the image of a cell. Conflicting prescriptions make the
  /// enumeration empty.
  MapEnumerator& fix(int dim, int cell, const Simplex& t) {
    fixed_.push_back({{dim, cell}, t});
    return *this;
  }

  /// Restricts the allowed image of individual cells.
  MapEnumerator& require(Predicate p) {
    preds_.push_back(std::move(p));
    return *this;
  }

  /// Only maps sending non-degenerate cells injectively to non-degenerate cells.
  MapEnumerator& injective_nondegenerate() {
    injective_ = true;
    used_.resize(x_.dim_bound() + 1);
    for (int d = 0; d <= x_.dim_bound(); ++d) used_[d].assign(x_.size(d), 0);
    return *this;
  }

  /// Calls visit on each map until it returns false. Returns the number visited.
  std::size_t run(const std::function<bool(const SMap&)>& visit) {
    reset();
    std::size_t count = 0;
    bool ok = true;
    for (auto const& [cell, t] : fixed_) {
      if (cell.first > a_.dim_bound() || cell.second >= static_cast<int>(a_.size(cell.first)) || t.dim != cell.first ||
          t.cell_dim() > x_.dim_bound())
        throw InputError("prescribed image does not match the source cell");
      if (!assign(cell.first, cell.second, t)) {
        ok = false;
        break;
      }
    }
    if (ok) {
      stop_ = false;
      search(0, visit, count);
    }
    reset();
    return count;
  }

  std::optional<SMap> first() {
    std::optional<SMap> r;
    run([&](const SMap& f) {
      r = f;
      return false;
    });
    return r;
  }

  std::vector<SMap> all() {
    std::vector<SMap> r;
    run([&](const SMap& f) {
      r.push_back(f);
      return true;
    });
    return r;
  }

  std::size_t count() {
    return run([](const SMap&) { return true; });
  }

 private:
  void reset() {
    undo(0);
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [d, c] = trail_.back();
      trail_.pop_back();
      if (injective_) {
        const Simplex& t = asg_[d][c];
        --used_[t.cell_dim()][t.cell];
      }
      asg_[d][c] = Simplex{-1, 0, -1};
    }
  }

  bool assign(int d, int c, const Simplex& t) {
    Simplex& slot = asg_[d][c];
    if (slot.cell >= 0) return slot == t;
    if (injective_ && (t.degen != 0 || used_[d][t.cell] > 0)) return false;
    for (auto const& p : preds_)
      if (!p(d, c, t)) return false;
    slot = t;
    trail_.push_back({d, c});
    if (injective_) ++used_[d][t.cell];
    if (d == 0) return true;
    auto const& fs = a_.faces(d, c);
    for (int i = 0; i <= d; ++i) {
      const Simplex u = x_.face(t, i);
      const Simplex& fa = fs[i];
      Simplex cand = u;
      if (fa.degen != 0) {
        cand = x_.apply(first_section(fa.degen, d - 1), u);
        if (degenerate_by(cand, fa.degen, d - 1) != u) return false;
      }
      if (!assign(fa.cell_dim(), fa.cell, cand)) return false;
    }
    return true;
  }

  const std::vector<Simplex>& candidates(int d) {
    if (static_cast<int>(cands_.size()) <= d) cands_.resize(d + 1);
    auto& slot = cands_[d];
    if (!slot) slot = x_.all_simplices(d);
    return *slot;
  }

  // Candidates whose i-th face equals `face`, indexed lazily.
  const std::vector<Simplex>& candidates_by_face(int d, int i, const Simplex& face) {
    auto key = std::make_pair(d, i);
    auto it = by_face_.find(key);
    if (it == by_face_.end()) {
      std::unordered_map<Simplex, std::vector<Simplex>, SimplexHash> idx;
      for (auto const& t : candidates(d)) idx[x_.face(t, i)].push_back(t);
      it = by_face_.emplace(key, std::move(idx)).first;
    }
    auto jt = it->second.find(face);
    return jt == it->second.end() ? empty_ : jt->second;
  }

  void search(std::size_t pos, const std::function<bool(const SMap&)>& visit, std::size_t& count) {
    while (pos < order_.size() && asg_[order_[pos].first][order_[pos].second].cell >= 0) ++pos;
    if (pos == order_.size()) {
      ++count;
      SMap f;
      f.img = asg_;
      if (!visit(f)) stop_ = true;
      return;
    }
    auto [d, c] = order_[pos];
    const std::vector<Simplex>* cs = nullptr;
    if (d > 0) {
      auto const& fs = a_.faces(d, c);
      for (int i = 0; i <= d && !cs; ++i) {
        const Simplex& fa = fs[i];
        const Simplex& known = asg_[fa.cell_dim()][fa.cell];
        if (known.cell >= 0) cs = &candidates_by_face(d, i, degenerate_by(known, fa.degen, d - 1));
      }
    }
    if (!cs) cs = &candidates(d);
    for (auto const& t : *cs) {
      std::size_t mark = trail_.size();
      if (assign(d, c, t)) search(pos + 1, visit, count);
      undo(mark);
      if (stop_) return;
    }
  }

  const SSet& a_;
  const SSet& x_;
  std::vector<std::vector<Simplex>> asg_;
  std::vector<std::pair<int, int>> order_;
  std::vector<std::pair<std::pair<int, int>, Simplex>> fixed_;
  std::vector<Predicate> preds_;
  std::vector<std::pair<int, int>> trail_;
  std::vector<std::optional<std::vector<Simplex>>> cands_;
  struct PairHash {
    std::size_t operator()(const std::pair<int, int>& p) const noexcept { return p.first * 131u + p.second; }
  };
  std::unordered_map<std::pair<int, int>, std::unordered_map<Simplex, std::vector<Simplex>, SimplexHash>, PairHash>
      by_face_;
  std::vector<Simplex> empty_;
  bool injective_ = false;
  std::vector<std::vector<int>> used_;
  bool stop_ = false;
};

/// All maps A -> X in enumeration order.
inline std::vector<SMap> enumerate_maps(const SSet& a, const SSet& x) { return MapEnumerator(a, x).all(); }

/// An isomorphism A -> X, if one exists.
inline std::optional<SMap> find_isomorphism(const SSet& a, const SSet& x) {
  if (a.top_dim() != x.top_dim()) return std::nullopt;
  for (int d = 0; d <= a.top_dim(); ++d)
    if (a.size(d) != x.size(d)) return std::nullopt;
  if (a.top_dim() < 0) return identity_map(a);
  return MapEnumerator(a, x).injective_nondegenerate().first();
}

/// The map between vertex-determined simplicial sets induced by a
/// function on vertices. Throws if some simplex has no image.
template <class F>
SMap map_from_vertices(const SSet& a, const VertexIndex& xi, F&& fn) {
  SMap f;
  f.img.resize(a.dim_bound() + 1);
  for (int d = 0; d <= a.dim_bound(); ++d) {
    for (int c = 0; c < static_cast<int>(a.size(d)); ++c) {
      auto vs = a.vertices(a.cell(d, c));
      for (auto& v : vs) v = fn(v);
      auto t = xi.find(vs);
      if (!t) throw PreconditionError("vertex function does not extend over " + a.name(d, c));
      f.img[d].push_back(*t);
    }
  }
  return f;
}

}  // namespace ff

#endif
