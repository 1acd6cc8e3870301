#ifndef FRACTION_FORGE_TESTS_SUPPORT_HPP
#define FRACTION_FORGE_TESTS_SUPPORT_HPP

#include <algorithm>
#include <filesystem>
#include <string>
#include <vector>

#include "fraction_forge/io/json_io.hpp"
#include "fraction_forge/sset/constructions.hpp"

namespace ff::test {

inline std::filesystem::path corpus_dir() { return std::filesystem::path(FF_SOURCE_DIR) / "corpus"; }

inline std::vector<std::filesystem::path> corpus_files(const std::string& sub) {
  std::vector<std::filesystem::path> r;
  for (auto const& e : std::filesystem::directory_iterator(corpus_dir() / sub))
    if (e.path().extension() == ".json") r.push_back(e.path());
  std::sort(r.begin(), r.end());
  return r;
}

struct CorpusCategory {
  std::string name;
  MarkedCategory cat;
  json expect;
};

inline std::vector<CorpusCategory> corpus_categories() {
  std::vector<CorpusCategory> r;
  for (auto const& p : corpus_files("categories")) {
    json j = read_json_file(p.string());
    r.push_back({p.stem().string(), marked_category_from_json(j), j.value("expect", json::object())});
  }
  return r;
}

// Small simplicial sets used as fixtures.
inline SSet simplex_at(int n, int bound) { return nerve_poset(ordinal(n), bound); }

inline SSet hollow_triangle(int bound) {
  return sub_sset(nerve_poset(ordinal(2), bound), [](int d, int) { return d < 2; }).sset;
}

inline SSet horn21(int bound) {
  SSet d = nerve_poset(ordinal(2), bound);
  return sub_sset(d, [&](int dim, int c) {
           if (dim >= 2) return false;
           return !(dim == 1 && d.vertices(d.cell(1, c)) == std::vector<int>{0, 2});
         })
      .sset;
}

inline SSet circle(int bound) {
  SSet x(bound);
  x.add_cell(0, "*");
  x.add_cell(1, "l", {Simplex{0, 0, 0}, Simplex{0, 0, 0}});
  return x;
}

// a -f-> b with a 2-cell whose last edge is the identity of b
inline SSet pinched_triangle(int bound) {
  SSet x(bound);
  x.add_cell(0, "a");
  x.add_cell(0, "b");
  x.add_cell(1, "f", {Simplex{0, 0, 1}, Simplex{0, 0, 0}});
  x.add_cell(2, "t", {Simplex{1, 1u, 1}, Simplex{1, 0, 0}, Simplex{1, 0, 0}});
  return x;
}

}  // namespace ff::test

#endif
