#ifndef FRACTION_FORGE_CLI_SUITE_HPP
#define FRACTION_FORGE_CLI_SUITE_HPP

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <string>
#include <thread>
#include <vector>

#include "fraction_forge/dht/dht.hpp"
#include "fraction_forge/io/digest.hpp"
#include "fraction_forge/io/json_io.hpp"
#include "fraction_forge/localize/localize.hpp"

namespace ff {

struct SuiteCheck {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct SuiteReport {
  std::vector<SuiteCheck> checks;
  json facts = json::object();

  bool ok() const {
    return std::all_of(checks.begin(), checks.end(), [](const SuiteCheck& c) { return c.ok; });
  }
  void add(std::string name, bool ok, std::string detail = "") { checks.push_back({std::move(name), ok, std::move(detail)}); }
};

namespace suite_detail {

inline std::string yes_no(bool b) { return b ? "true" : "false"; }

inline std::vector<int> identity_on_objects(const FinCategory& c) {
  std::vector<int> r(c.num_objects());
  for (int x = 0; x < c.num_objects(); ++x) r[x] = x;
  return r;
}

}  // namespace suite_detail

/// Proper fractions on side L against lifting in the nerve at the shapes
/// that suffice for nerves.
inline bool equivalence_holds(const MarkedCategory& c, Side side, const MarkedNerve& nv3, std::string* detail = nullptr) {
  const bool classical = (side == Side::L ? check_proper_clf(c) : check_proper_crf(c)).ok;
  const bool infty = check_clf_infty(nv3.marked, side, sufficient_shapes(side), true).ok;
  if (detail) *detail = "proper " + suite_detail::yes_no(classical) + ", lifting " + suite_detail::yes_no(infty);
  return classical == infty;
}

/// Gabriel-Zisman, colimit and pi_0 hom sets for every object pair, and
/// Ho(Ex_+) for side L. Requires proper fractions on the given side.
inline SuiteCheck localization_agreement(const MarkedCategory& c, Side side, json* table = nullptr) {
  SuiteCheck r{"localization " + side_name(side), true, ""};
  Fractions fr = gz_fractions(c, side);
  const int n = c.cat.num_objects();
  std::optional<LocalizationComparison> cmp;
  if (side == Side::L) {
    cmp = compare_localizations(c);
    if (!cmp->iso) {
      r.ok = false;
      r.detail = "Ho(Ex): " + cmp->detail;
    }
  }
  const MarkedCategory op = c.opposite();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      const int gz = static_cast<int>(fr.cat.hom(x, y).size());
      // colimits compute left fractions; for R use the opposite
      const int a = side == Side::L ? x : y, b = side == Side::L ? y : x;
      const MarkedCategory& work = side == Side::L ? c : op;
      ColimitHom col = hom_via_colimit(work, a, b);
      auto cc = compare_colimit_hom(col, fr.homs[a][b]);
      Pi0Check pi = pi0_mapping_check(c, x, y, side);
      json row = {{"from", c.cat.objects[x]}, {"to", c.cat.objects[y]}, {"gz", gz}, {"colimit", col.classes},
                  {"pi0", pi.components}};
      if (cmp) row["ho"] = cmp->hom_sizes[x][y].first;
      if (table) table->push_back(row);
      std::string bad;
      if (!cc.ok) bad = "colimit: " + cc.detail;
      else if (!pi.ok) bad = "pi0: " + pi.detail;
      else if (col.classes != gz || pi.components != gz || (cmp && cmp->hom_sizes[x][y].first != gz))
        bad = "hom sizes differ";
      if (!bad.empty() && r.ok) {
        r.ok = false;
        r.detail = c.cat.objects[x] + " -> " + c.cat.objects[y] + ": " + bad;
      }
    }
  return r;
}

/// The invariant suite for one marked category. Keys of `expect` name
/// recorded outcomes: clf, proper_clf, crf, proper_crf, two_out_of_three.
inline SuiteReport category_suite(const MarkedCategory& c, const json& expect) {
  SuiteReport r;
  MarkedNerve nv2 = marked_nerve(c, 2);
  MarkedNerve nv3 = marked_nerve(c, 3);
  const bool clf = check_clf_classical(c).ok, proper_clf = check_proper_clf(c).ok;
  const bool crf = check_crf_classical(c).ok, proper_crf = check_proper_crf(c).ok;
  const bool two3 = is_two_out_of_three(nv2.marked);
  r.facts = {{"clf", clf}, {"proper_clf", proper_clf}, {"crf", crf}, {"proper_crf", proper_crf}, {"two_out_of_three", two3}};
  if (!expect.is_object()) throw InputError("/expect: expected an object");
  for (auto it = expect.begin(); it != expect.end(); ++it) {
    if (!r.facts.contains(it.key())) throw InputError("/expect/" + it.key() + ": unknown expectation");
    if (!it.value().is_boolean()) throw InputError("/expect/" + it.key() + ": expected a boolean");
    const bool want = it.value().get<bool>(), got = r.facts[it.key()].get<bool>();
    r.add("expect " + it.key(), want == got, want == got ? "" : "recorded " + suite_detail::yes_no(want));
  }
  for (Side side : {Side::L, Side::R}) {
    std::string d;
    bool ok = equivalence_holds(c, side, nv3, &d);
    r.add("equivalence " + side_name(side), ok, ok ? "" : d);
  }
  // lifting on the right is lifting on the left in the opposite
  {
    const bool right = check_clf_infty(nv3.marked, Side::R, sufficient_shapes(Side::R), true).ok;
    const bool left_op = check_clf_infty(opposite(nv3.marked), Side::L, sufficient_shapes(Side::L), true).ok;
    bool ok = right == left_op;
    if (ok && clf && crf) {
      Fractions l = gz_left_fractions(c), rt = gz_right_fractions(c);
      std::vector<std::pair<int, int>> forced;
      for (int f = 0; f < c.cat.num_morphisms(); ++f) forced.push_back({l.functor[f], rt.functor[f]});
      ok = find_category_iso(l.cat, rt.cat, suite_detail::identity_on_objects(l.cat), forced).has_value();
    }
    r.add("duality", ok, ok ? "" : "left and right sides disagree");
  }
  json table = json::array();
  if (proper_clf) {
    auto chk = localization_agreement(c, Side::L, &table);
    r.add(chk.name, chk.ok, chk.detail);
  }
  if (proper_crf) {
    auto chk = localization_agreement(c, Side::R);
    r.add(chk.name, chk.ok, chk.detail);
  }
  if (!table.empty()) r.facts["hom_table"] = table;
  if (clf && two3) {
    std::string bad;
    for (int x = 0; x < c.cat.num_objects() && bad.empty(); ++x)
      if (!slice_filtered_check(c, x)) bad = "coslice under " + c.cat.objects[x] + " is not filtered";
    r.add("filtered slices", bad.empty(), bad);
  }
  {
    MarkedNerve iso = marked_nerve(iso_marking(c.cat), 3);
    auto l = check_clf_infty(iso.marked, Side::L, default_shapes(Side::L), true);
    auto rt = check_clf_infty(iso.marked, Side::R, default_shapes(Side::R), true);
    r.add("iso marking", l.ok && rt.ok, l.ok ? (rt.ok ? "" : "fails " + rt.failed) : "fails " + l.failed);
  }
  return r;
}

/// Keys of `expect`: base (a vertex name), a1_rank, a1_torsion.
inline SuiteReport graph_suite(const Graph& g, const json& expect, int oracle_bound) {
  SuiteReport r;
  if (!expect.is_object()) throw InputError("/expect: expected an object");
  int base = 0;
  if (expect.contains("base")) base = vertex_from_json(g, expect.at("base"), "/expect/base");
  auto p = a1_presentation(g, base);
  auto [rank, torsion] = abelianization_rank(p.group);
  r.facts = {{"base", g.name(base)}, {"generators", p.group.generators.size()}, {"relators", p.group.relators.size()},
             {"a1_rank", rank}, {"a1_torsion", torsion}};
  for (auto it = expect.begin(); it != expect.end(); ++it) {
    if (it.key() == "base") continue;
    if (it.key() != "a1_rank" && it.key() != "a1_torsion") throw InputError("/expect/" + it.key() + ": unknown expectation");
    bool ok = it.value() == r.facts[it.key()];
    r.add("expect " + it.key(), ok, ok ? "" : "recorded " + it.value().dump() + ", computed " + r.facts[it.key()].dump());
  }
  if (oracle_bound > 0 && g.size() <= 8) {
    auto a = a1_oracle_agreement(g, base, oracle_bound);
    r.facts["oracle_loops"] = a.loops;
    r.facts["oracle_classes"] = a.classes;
    r.add("loop oracle", a.ok, a.detail);
  } else {
    r.facts["oracle_skipped"] = oracle_bound > 0 ? "more than 8 vertices" : "disabled";
  }
  return r;
}

inline json report_json(const SuiteReport& r) {
  json checks = json::array();
  for (auto const& c : r.checks) {
    json e = {{"name", c.name}, {"ok", c.ok}};
    if (!c.detail.empty()) e["detail"] = c.detail;
    checks.push_back(e);
  }
  return {{"ok", r.ok()}, {"checks", checks}, {"facts", r.facts}};
}

struct CorpusRun {
  json report;
  int errors = 0;
  int failures = 0;
  std::vector<std::string> warnings;
};

/// Every .json file below `dir`, in sorted order. A file holding "graph"
/// is a graph entry; one holding "objects" is a marked category.
inline CorpusRun corpus_run(const std::string& dir, int jobs = 1, int oracle_bound = 8) {
  namespace fs = std::filesystem;
  if (!fs::is_directory(dir)) throw InputError(dir + ": not a directory");
  std::vector<fs::path> files;
  for (auto const& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());
  std::vector<json> entries(files.size());
  std::vector<char> errored(files.size(), 0), failed(files.size(), 0);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < files.size(); i = next++) {
      const std::string rel = fs::relative(files[i], dir).generic_string();
      json e = {{"file", rel}};
      try {
        const std::string bytes = read_file_bytes(files[i].string());
        e["sha256"] = sha256_hex(bytes);
        json j = read_json_file(files[i].string());
        SuiteReport rep;
        if (j.is_object() && j.contains("graph")) {
          e["kind"] = "graph";
          rep = graph_suite(graph_from_json(j.at("graph"), "/graph"), j.value("expect", json::object()), oracle_bound);
        } else if (j.is_object() && j.contains("objects")) {
          e["kind"] = "category";
          rep = category_suite(marked_category_from_json(j), j.value("expect", json::object()));
        } else {
          throw InputError("/: neither a graph entry nor a marked category");
        }
        e.update(report_json(rep));
        failed[i] = !rep.ok();
      } catch (const InvariantError& ex) {
        e["ok"] = false;
        e["error"] = std::string("invariant violated: ") + ex.what();
        failed[i] = 1;
      } catch (const std::exception& ex) {
        e["ok"] = false;
        e["error"] = ex.what();
        errored[i] = 1;
      }
      entries[i] = std::move(e);
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < std::max(1, jobs); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  CorpusRun r;
  for (std::size_t i = 0; i < files.size(); ++i) {
    r.errors += errored[i];
    r.failures += failed[i];
  }
  if (files.empty()) r.warnings.push_back("no .json files under " + dir);
  r.report = {{"files", entries},
              {"summary", {{"files", files.size()}, {"failures", r.failures}, {"errors", r.errors}}},
              {"warnings", r.warnings}};
  return r;
}

}  // namespace ff

#endif
