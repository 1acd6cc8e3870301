#ifndef FRACTION_FORGE_TESTS_SUPPORT_DHT_HPP
#define FRACTION_FORGE_TESTS_SUPPORT_DHT_HPP

#include <algorithm>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fraction_forge/dht/dht.hpp"

namespace ff::test {

inline Graph tree6() {
  // 0 - 1 - 2 - 3, 1 - 4, 2 - 5
  Graph g({"0", "1", "2", "3", "4", "5"});
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.add_edge(1, 4);
  g.add_edge(2, 5);
  return g;
}

// A random graph cube; grid points are filled in order, restarting when a
// point has no admissible value.
inline StableCube random_cube(const Graph& g, std::mt19937& rng, int n, int max_extent) {
  std::uniform_int_distribution<int> ext(0, max_extent);
  for (;;) {
    StableCube c;
    for (int i = 0; i < n; ++i) c.extent.push_back(ext(rng));
    auto strides = c.strides();
    c.values.assign(cube_detail::volume(c.extent), -1);
    bool ok = true;
    std::size_t idx = 0;
    cube_detail::for_each_point(c.extent, [&](const std::vector<int>& p) {
      if (!ok) return;
      std::vector<int> cand;
      for (int v = 0; v < g.size(); ++v) {
        bool fits = true;
        for (int i = 0; i < n && fits; ++i)
          if (p[i] > 0) fits = g.adjacent(v, c.values[idx - strides[i]]);
        if (fits) cand.push_back(v);
      }
      if (cand.empty()) {
        ok = false;
        return;
      }
      c.values[idx++] = cand[std::uniform_int_distribution<std::size_t>(0, cand.size() - 1)(rng)];
    });
    if (ok) return trim(c);
  }
}

// all connected graphs on n vertices up to isomorphism
inline std::vector<Graph> connected_graphs(int n) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
  std::vector<std::vector<int>> perms;
  std::vector<int> p(n);
  for (int i = 0; i < n; ++i) p[i] = i;
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  std::vector<std::vector<int>> slot_of(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < slots.size(); ++s) {
    slot_of[slots[s].first][slots[s].second] = static_cast<int>(s);
    slot_of[slots[s].second][slots[s].first] = static_cast<int>(s);
  }
  std::set<unsigned> seen;
  std::vector<Graph> out;
  for (unsigned mask = 0; mask < (1u << slots.size()); ++mask) {
    unsigned canon = mask;
    for (auto const& q : perms) {
      unsigned m = 0;
      for (std::size_t s = 0; s < slots.size(); ++s)
        if (mask >> s & 1u) m |= 1u << slot_of[q[slots[s].first]][q[slots[s].second]];
      canon = std::min(canon, m);
    }
    if (!seen.insert(canon).second) continue;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back(std::to_string(i));
    Graph g(names);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (canon >> s & 1u) g.add_edge(slots[s].first, slots[s].second);
    if (g.connected()) out.push_back(g);
  }
  return out;
}

inline BoxFaces box_of(const StableCube& c, int axis, int end) {
  BoxFaces b;
  for (int a = 1; a <= c.dim(); ++a)
    for (int e = 0; e <= 1; ++e)
      if (a != axis || e != end) b[{a, e}] = face(c, a, e);
  return b;
}

// Open boxes cut from random cubes in C4, C5 and the tree, each refillable
// by construction: (graph name, axis, end, box).
struct CutBox {
  std::string graph;
  int axis, end;
  StableCube cube;
  BoxFaces faces;
};

inline std::vector<CutBox> cut_boxes(unsigned seed, int per_graph) {
  std::mt19937 rng(seed);
  std::vector<CutBox> out;
  const std::vector<std::pair<std::string, Graph>> graphs{{"C4", cycle_graph(4)}, {"C5", cycle_graph(5)}, {"tree6", tree6()}};
  for (auto const& [name, g] : graphs)
    for (int k = 0; k < per_graph; ++k) {
      StableCube c = random_cube(g, rng, 2, 3);
      const int axis = 1 + k % 2, end = (k / 2) % 2;
      out.push_back({name, axis, end, c, box_of(c, axis, end)});
    }
  return out;
}

inline const Graph& named_graph(const std::string& name) {
  static const Graph c4 = cycle_graph(4), c5 = cycle_graph(5), t6 = tree6();
  return name == "C4" ? c4 : name == "C5" ? c5 : t6;
}

}  // namespace ff::test

#endif
