#ifndef FRACTION_FORGE_IO_JSON_IO_HPP
#define FRACTION_FORGE_IO_JSON_IO_HPP

#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fraction_forge/marked/marked.hpp"

namespace ff {

using json = nlohmann::json;

/// Reads and parses a JSON file; syntax errors carry line and column.
inline json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

namespace io_detail {

inline std::string ptr(const std::string& base, const std::string& key) { return base + "/" + key; }
inline std::string ptr(const std::string& base, std::size_t i) { return base + "/" + std::to_string(i); }

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
  throw InputError((where.empty() ? std::string("/") : where) + ": " + what);
}

inline const json& field(const json& j, const std::string& base, const std::string& key) {
  if (!j.is_object()) bad(base, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(ptr(base, key), "missing field");
  return *it;
}

inline std::string str(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

inline int integer(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<int>();
}

inline const json& array(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

}  // namespace io_detail

/// { "dim_bound": n, "cells": [[names of dim 0], [names of dim 1], ...],
///   "faces": { "<cell>": [[word, "<cell>"], ...] } }
/// A word is a list of degeneracy indices, or a string like "s1 s0" or "".
inline SSet sset_from_json(const json& j) {
  using namespace io_detail;
  const int bound = integer(field(j, "", "dim_bound"), "/dim_bound");
  if (bound < 0 || bound > kMaxDim) bad("/dim_bound", "out of range");
  SSet x(bound);
  const json& cells = array(field(j, "", "cells"), "/cells");
  if (static_cast<int>(cells.size()) > bound + 1) bad("/cells", "more dimensions than dim_bound allows");
  const json empty_faces = json::object();
  const json& faces = j.contains("faces") ? j.at("faces") : empty_faces;
  if (!faces.is_object()) bad("/faces", "expected an object");
  std::map<std::string, int> dim_of;
  for (std::size_t d = 0; d < cells.size(); ++d) {
    const std::string at = ptr("/cells", d);
    for (std::size_t c = 0; c < array(cells[d], at).size(); ++c) {
      const std::string name = str(cells[d][c], ptr(at, c));
      if (!dim_of.emplace(name, static_cast<int>(d)).second) bad(ptr(at, c), "duplicate cell name '" + name + "'");
      std::vector<Simplex> fs;
      if (d > 0) {
        const std::string fat = ptr("/faces", name);
        if (!faces.contains(name)) bad(fat, "missing faces");
        const json& fl = array(faces.at(name), fat);
        if (fl.size() != d + 1) bad(fat, "expected " + std::to_string(d + 1) + " faces");
        for (std::size_t i = 0; i < fl.size(); ++i) {
          const std::string iat = ptr(fat, i);
          const json& e = fl[i];
          if (!e.is_array() || e.size() != 2) bad(iat, "expected [word, cell]");
          std::vector<int> word;
          if (e[0].is_array()) {
            for (std::size_t w = 0; w < e[0].size(); ++w) word.push_back(integer(e[0][w], ptr(ptr(iat, 0), w)));
          } else if (e[0].is_string()) {
            std::istringstream ws(e[0].get<std::string>());
            std::string tok;
            while (ws >> tok) {
              if (tok.size() < 2 || tok[0] != 's') bad(ptr(iat, 0), "bad degeneracy token '" + tok + "'");
              try {
                word.push_back(std::stoi(tok.substr(1)));
              } catch (const std::exception&) {
                bad(ptr(iat, 0), "bad degeneracy token '" + tok + "'");
              }
            }
          } else {
            bad(ptr(iat, 0), "expected a degeneracy word");
          }
          const std::string target = str(e[1], ptr(iat, 1));
          auto it = dim_of.find(target);
          if (it == dim_of.end()) bad(ptr(iat, 1), "unknown or later cell '" + target + "'");
          const int fd = static_cast<int>(d) - 1;
          if (it->second + static_cast<int>(word.size()) != fd)
            bad(iat, "face has dimension " + std::to_string(it->second + word.size()) + ", expected " + std::to_string(fd));
          try {
            uint32_t mask = word_to_mask(word, fd);
            fs.push_back(Simplex{fd, mask, x.find(target)->second});
          } catch (const InputError& err) {
            bad(ptr(iat, 0), err.what());
          }
        }
      }
      try {
        x.add_cell(static_cast<int>(d), name, fs);
      } catch (const InputError& err) {
        bad(ptr(at, c), err.what());
      }
    }
  }
  for (auto it = faces.begin(); it != faces.end(); ++it)
    if (!dim_of.count(it.key())) bad(ptr("/faces", it.key()), "faces given for an unknown cell");
  try {
    x.check_identities();
  } catch (const Error& err) {
    bad("/faces", err.what());
  }
  return x;
}

inline json word_json(uint32_t mask) { return json(mask_to_word(mask)); }

inline json sset_to_json(const SSet& x) {
  json j;
  j["dim_bound"] = x.dim_bound();
  j["cells"] = json::array();
  j["faces"] = json::object();
  for (int d = 0; d <= x.top_dim(); ++d) {
    json names = json::array();
    for (int c = 0; c < static_cast<int>(x.size(d)); ++c) {
      names.push_back(x.name(d, c));
      if (d == 0) continue;
      json fl = json::array();
      for (auto const& s : x.faces(d, c)) fl.push_back(json::array({word_json(s.degen), x.name(s.cell_dim(), s.cell)}));
      j["faces"][x.name(d, c)] = fl;
    }
    j["cells"].push_back(names);
  }
  return j;
}

/// SSet format plus "marked": [edge names].
inline MarkedSSet marked_sset_from_json(const json& j) {
  using namespace io_detail;
  SSet x = sset_from_json(j);
  std::vector<char> m(x.dim_bound() >= 1 ? x.size(1) : 0, 0);
  if (j.contains("marked")) {
    const json& ml = array(j.at("marked"), "/marked");
    for (std::size_t i = 0; i < ml.size(); ++i) {
      const std::string n = str(ml[i], ptr("/marked", i));
      auto s = x.find(n);
      if (!s || s->first != 1) bad(ptr("/marked", i), "'" + n + "' is not a non-degenerate edge");
      m[s->second] = 1;
    }
  }
  return MarkedSSet(std::move(x), std::move(m));
}

inline json marked_sset_to_json(const MarkedSSet& x) {
  json j = sset_to_json(x.sset);
  j["marked"] = json::array();
  for (int e = 0; e < static_cast<int>(x.marked.size()); ++e)
    if (x.marked[e]) j["marked"].push_back(x.sset.name(1, e));
  return j;
}

/// { "objects": [...], "morphisms": [{"id", "dom", "cod"}],
///   "identities": {"<object>": "<morphism>"}, "comp": [["g", "f", "gf"]] }
/// Identities may be omitted: an object without one gets "id_<object>".
/// Composites with an identity are filled in when not listed.
inline FinCategory category_from_json(const json& j) {
  using namespace io_detail;
  FinCategory c;
  std::map<std::string, int> obj, mor;
  const json& objs = array(field(j, "", "objects"), "/objects");
  for (std::size_t i = 0; i < objs.size(); ++i) {
    std::string n = str(objs[i], ptr("/objects", i));
    if (!obj.emplace(n, static_cast<int>(i)).second) bad(ptr("/objects", i), "duplicate object '" + n + "'");
    c.objects.push_back(n);
  }
  const json& mors = array(field(j, "", "morphisms"), "/morphisms");
  for (std::size_t i = 0; i < mors.size(); ++i) {
    const std::string at = ptr("/morphisms", i);
    std::string id = str(field(mors[i], at, "id"), ptr(at, "id"));
    std::string dn = str(field(mors[i], at, "dom"), ptr(at, "dom"));
    std::string cn = str(field(mors[i], at, "cod"), ptr(at, "cod"));
    if (!obj.count(dn)) bad(ptr(at, "dom"), "unknown object '" + dn + "'");
    if (!obj.count(cn)) bad(ptr(at, "cod"), "unknown object '" + cn + "'");
    if (!mor.emplace(id, c.num_morphisms()).second) bad(ptr(at, "id"), "duplicate morphism '" + id + "'");
    c.morphisms.push_back({id, obj[dn], obj[cn]});
  }
  c.identity.assign(c.num_objects(), -1);
  if (j.contains("identities")) {
    const json& ids = j.at("identities");
    if (!ids.is_object()) bad("/identities", "expected an object");
    for (auto it = ids.begin(); it != ids.end(); ++it) {
      const std::string at = ptr("/identities", it.key());
      if (!obj.count(it.key())) bad(at, "unknown object");
      std::string m = str(it.value(), at);
      if (!mor.count(m)) bad(at, "unknown morphism '" + m + "'");
      int f = mor[m], x = obj[it.key()];
      if (c.dom(f) != x || c.cod(f) != x) bad(at, "identity must be an endomorphism of its object");
      c.identity[x] = f;
    }
  }
  for (int x = 0; x < c.num_objects(); ++x) {
    if (c.identity[x] >= 0) continue;
    std::string id = "id_" + c.objects[x];
    if (mor.count(id)) bad("/identities", "object '" + c.objects[x] + "' has no identity and '" + id + "' is taken");
    mor[id] = c.num_morphisms();
    c.identity[x] = c.num_morphisms();
    c.morphisms.push_back({id, x, x});
  }
  const int n = c.num_morphisms();
  c.comp.assign(n, std::vector<int>(n, -1));
  if (j.contains("comp")) {
    const json& cl = array(j.at("comp"), "/comp");
    for (std::size_t i = 0; i < cl.size(); ++i) {
      const std::string at = ptr("/comp", i);
      if (!cl[i].is_array() || cl[i].size() != 3) bad(at, "expected [g, f, gf]");
      int t[3];
      for (int q = 0; q < 3; ++q) {
        std::string m = str(cl[i][q], ptr(at, q));
        if (!mor.count(m)) bad(ptr(at, q), "unknown morphism '" + m + "'");
        t[q] = mor[m];
      }
      int g = t[0], f = t[1], h = t[2];
      if (c.cod(f) != c.dom(g)) bad(at, "'" + c.morphisms[g].name + "' and '" + c.morphisms[f].name + "' are not composable");
      if (c.dom(h) != c.dom(f) || c.cod(h) != c.cod(g)) bad(at, "composite has the wrong type");
      if (c.comp[g][f] >= 0 && c.comp[g][f] != h) bad(at, "conflicting composite");
      c.comp[g][f] = h;
    }
  }
  for (int f = 0; f < n; ++f) {
    int l = c.identity[c.cod(f)], r = c.identity[c.dom(f)];
    if (c.comp[l][f] < 0) c.comp[l][f] = f;
    if (c.comp[f][r] < 0) c.comp[f][r] = f;
    if (c.comp[l][f] != f || c.comp[f][r] != f) bad("/comp", "composite with an identity of '" + c.morphisms[f].name + "' is not the morphism itself");
  }
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      if (c.cod(f) == c.dom(g) && c.comp[g][f] < 0)
        bad("/comp", "missing composite of '" + c.morphisms[g].name + "' after '" + c.morphisms[f].name + "'");
  try {
    c.validate();
  } catch (const InputError& e) {
    bad("/comp", e.what());
  }
  return c;
}

inline json category_to_json(const FinCategory& c) {
  json j;
  j["objects"] = c.objects;
  j["morphisms"] = json::array();
  for (auto const& m : c.morphisms)
    j["morphisms"].push_back({{"id", m.name}, {"dom", c.objects[m.dom]}, {"cod", c.objects[m.cod]}});
  j["identities"] = json::object();
  for (int x = 0; x < c.num_objects(); ++x) j["identities"][c.objects[x]] = c.morphisms[c.identity[x]].name;
  j["comp"] = json::array();
  for (int g = 0; g < c.num_morphisms(); ++g)
    for (int f = 0; f < c.num_morphisms(); ++f)
      if (c.comp[g][f] >= 0 && !c.is_identity(g) && !c.is_identity(f))
        j["comp"].push_back({c.morphisms[g].name, c.morphisms[f].name, c.morphisms[c.comp[g][f]].name});
  return j;
}

/// FinCategory format plus "marked": [morphism ids]. Identities are
/// always marked.
inline MarkedCategory marked_category_from_json(const json& j) {
  using namespace io_detail;
  MarkedCategory mc{category_from_json(j), {}};
  mc.marked.assign(mc.cat.num_morphisms(), 0);
  for (int x = 0; x < mc.cat.num_objects(); ++x) mc.marked[mc.cat.identity[x]] = 1;
  if (j.contains("marked")) {
    const json& ml = array(j.at("marked"), "/marked");
    for (std::size_t i = 0; i < ml.size(); ++i) {
      std::string n = str(ml[i], ptr("/marked", i));
      int f = mc.cat.find_morphism(n);
      if (f < 0) bad(ptr("/marked", i), "unknown morphism '" + n + "'");
      mc.marked[f] = 1;
    }
  }
  return mc;
}

inline json marked_category_to_json(const MarkedCategory& c) {
  json j = category_to_json(c.cat);
  j["marked"] = json::array();
  for (int f = 0; f < c.cat.num_morphisms(); ++f)
    if (c.marked[f] && !c.cat.is_identity(f)) j["marked"].push_back(c.cat.morphisms[f].name);
  return j;
}

/// Adds file context to loader errors.
template <class F>
auto load_file(const std::string& path, F&& from_json) {
  json j = read_json_file(path);
  try {
    return from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace ff

#endif
