#ifndef FRACTION_FORGE_DHT_GRAPH_IO_HPP
#define FRACTION_FORGE_DHT_GRAPH_IO_HPP

#include <map>
#include <set>
#include <string>

#include "fraction_forge/dht/cube.hpp"
#include "fraction_forge/dht/lazy.hpp"
#include "fraction_forge/io/json_io.hpp"

namespace ff {

/// { "vertices": [names], "edges": [["u", "v"], ...] }. Loops and repeated
/// edges (in either orientation) are rejected.
inline Graph graph_from_json(const json& j, const std::string& at = "") {
  using namespace io_detail;
  const json& vs = array(field(j, at, "vertices"), ptr(at, "vertices"));
  std::vector<std::string> names;
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    std::string n = str(vs[i], ptr(ptr(at, "vertices"), i));
    if (!idx.emplace(n, static_cast<int>(i)).second) bad(ptr(ptr(at, "vertices"), i), "duplicate vertex '" + n + "'");
    names.push_back(n);
  }
  Graph g(names);
  const json& es = array(field(j, at, "edges"), ptr(at, "edges"));
  for (std::size_t i = 0; i < es.size(); ++i) {
    const std::string where = ptr(ptr(at, "edges"), i);
    if (!es[i].is_array() || es[i].size() != 2) bad(where, "expected [u, v]");
    int e[2];
    for (int q = 0; q < 2; ++q) {
      std::string n = str(es[i][q], ptr(where, q));
      auto it = idx.find(n);
      if (it == idx.end()) bad(ptr(where, q), "unknown vertex '" + n + "'");
      e[q] = it->second;
    }
    if (e[0] == e[1]) bad(where, "loop at '" + names[e[0]] + "': loops are implicit");
    if (g.edge(e[0], e[1])) bad(where, "repeated edge");
    g.add_edge(e[0], e[1]);
  }
  return g;
}

inline json graph_to_json(const Graph& g) {
  json j;
  j["vertices"] = g.names();
  j["edges"] = json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({g.name(u), g.name(v)});
  return j;
}

inline int vertex_from_json(const Graph& g, const json& j, const std::string& at) {
  std::string n = io_detail::str(j, at);
  int v = g.find(n);
  if (v < 0) io_detail::bad(at, "unknown vertex '" + n + "'");
  return v;
}

/// { "source": graph, "target": graph, "map": { "v": "w", ... } }
inline GraphMorphism morphism_from_json(const json& j) {
  using namespace io_detail;
  GraphMorphism f;
  f.source = graph_from_json(field(j, "", "source"), "/source");
  f.target = graph_from_json(field(j, "", "target"), "/target");
  const json& m = field(j, "", "map");
  if (!m.is_object()) bad("/map", "expected an object");
  f.map.assign(f.source.size(), -1);
  for (auto it = m.begin(); it != m.end(); ++it) {
    const std::string at = ptr("/map", it.key());
    int v = f.source.find(it.key());
    if (v < 0) bad(at, "unknown source vertex");
    f.map[v] = vertex_from_json(f.target, it.value(), at);
  }
  for (int v = 0; v < f.source.size(); ++v)
    if (f.map[v] < 0) bad("/map", "no image for '" + f.source.name(v) + "'");
  if (!is_graph_map(f.source, f.target, f.map)) bad("/map", "not a graph map");
  return f;
}

/// { "extents": [m_1, ...], "values": [names, first axis slowest] }
inline StableCube cube_from_json(const Graph& g, const json& j, const std::string& at) {
  using namespace io_detail;
  StableCube c;
  const json& ex = array(field(j, at, "extents"), ptr(at, "extents"));
  for (std::size_t i = 0; i < ex.size(); ++i) {
    int e = integer(ex[i], ptr(ptr(at, "extents"), i));
    if (e < 0) bad(ptr(ptr(at, "extents"), i), "negative extent");
    c.extent.push_back(e);
  }
  const json& vs = array(field(j, at, "values"), ptr(at, "values"));
  if (vs.size() != cube_detail::volume(c.extent)) bad(ptr(at, "values"), "wrong number of values for the extents");
  for (std::size_t i = 0; i < vs.size(); ++i) c.values.push_back(vertex_from_json(g, vs[i], ptr(ptr(at, "values"), i)));
  if (!is_graph_cube(g, c)) bad(at, "adjacent grid points map to non-adjacent vertices");
  return trim(c);
}

inline json cube_to_json(const Graph& g, const StableCube& c) {
  json j;
  j["extents"] = c.extent;
  j["values"] = json::array();
  for (int v : c.values) j["values"].push_back(g.name(v));
  return j;
}

struct OpenBox {
  int n = 0, missing_axis = 0, missing_end = 0;
  BoxFaces faces;
};

/// { "n": 2, "missing": [axis, end], "faces": [{ "face": [axis, end], "cube": cube }, ...] }
inline OpenBox box_from_json(const Graph& g, const json& j) {
  using namespace io_detail;
  OpenBox b;
  b.n = integer(field(j, "", "n"), "/n");
  const json& miss = array(field(j, "", "missing"), "/missing");
  if (miss.size() != 2) bad("/missing", "expected [axis, end]");
  b.missing_axis = integer(miss[0], "/missing/0");
  b.missing_end = integer(miss[1], "/missing/1");
  const json& fs = array(field(j, "", "faces"), "/faces");
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const std::string at = ptr("/faces", i);
    const json& k = array(field(fs[i], at, "face"), ptr(at, "face"));
    if (k.size() != 2) bad(ptr(at, "face"), "expected [axis, end]");
    std::pair<int, int> key{integer(k[0], ptr(ptr(at, "face"), 0)), integer(k[1], ptr(ptr(at, "face"), 1))};
    if (b.faces.count(key)) bad(ptr(at, "face"), "repeated face");
    b.faces[key] = cube_from_json(g, field(fs[i], at, "cube"), ptr(at, "cube"));
  }
  return b;
}

inline json line_to_json(const Graph& k, const LineMap& l) {
  json w = json::array();
  for (int v : l.walk) w.push_back(k.name(v));
  return {{"offset", l.offset}, {"walk", w}};
}

inline LineMap line_from_json(const Graph& k, const json& j, const std::string& at) {
  using namespace io_detail;
  LineMap l;
  l.offset = integer(field(j, at, "offset"), ptr(at, "offset"));
  const json& w = array(field(j, at, "walk"), ptr(at, "walk"));
  if (w.empty()) bad(ptr(at, "walk"), "empty walk");
  for (std::size_t i = 0; i < w.size(); ++i) l.walk.push_back(vertex_from_json(k, w[i], ptr(ptr(at, "walk"), i)));
  if (!is_line_map(k, l)) bad(ptr(at, "walk"), "consecutive vertices are not adjacent");
  return canonical(l);
}

}  // namespace ff

#endif
