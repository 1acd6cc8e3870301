#ifndef FRACTION_FORGE_CLI_APP_HPP
#define FRACTION_FORGE_CLI_APP_HPP

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fraction_forge/cli/suite.hpp"
#include "fraction_forge/exfunctor/ex.hpp"
#include "fraction_forge/io/dot.hpp"

namespace ff::cli {

struct Options {
  std::string input, side = "L", mode = "proper", shape = "2,1", of = "gz";
  std::string emit_dot, emit_sset, from, to, base, box, f, g, vertex;
  int levels = 2, oracle_bound = 8, window = 6, radius = 2, slack = 1, jobs = 1;
  bool json_out = true;
};

/// What a command hands back: the verdict body, the exit code and, for
/// DOT export, raw text for standard output.
struct Outcome {
  json body = json::object();
  int code = 0;
  std::optional<std::string> text;
};

namespace app_detail {

inline Side side_of(const Options& o) { return o.side == "L" ? Side::L : Side::R; }

struct MarkedInput {
  std::optional<MarkedCategory> cat;
  std::optional<MarkedSSet> sset;
};

inline MarkedInput load_marked(const std::string& path) {
  return load_file(path, [](const json& j) {
    MarkedInput in;
    if (j.is_object() && j.contains("objects")) in.cat = marked_category_from_json(j);
    else if (j.is_object() && j.contains("cells")) in.sset = marked_sset_from_json(j);
    else throw InputError("/: neither a marked category (\"objects\") nor a marked simplicial set (\"cells\")");
    return in;
  });
}

inline MarkedCategory load_category(const std::string& path) {
  auto in = load_marked(path);
  if (!in.cat) throw InputError(path + ": expected a marked category");
  return *in.cat;
}

// a bare graph or a corpus entry {"graph", "expect"}
inline std::pair<Graph, json> load_graph(const std::string& path) {
  return load_file(path, [](const json& j) {
    if (j.is_object() && j.contains("graph"))
      return std::make_pair(graph_from_json(j.at("graph"), "/graph"), j.value("expect", json::object()));
    return std::make_pair(graph_from_json(j), json::object());
  });
}

inline int object_of(const MarkedCategory& c, const std::string& name, const std::string& flag) {
  int x = c.cat.find_object(name);
  if (x < 0) throw InputError(flag + ": unknown object '" + name + "'");
  return x;
}

inline json verdict_json(const Verdict& v) {
  return {{"ok", v.ok}, {"failed", v.failed}, {"witnesses", v.witness}, {"shapes_checked", v.checked}, {"partial", v.partial}};
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError(path + ": cannot write file");
  out << text;
}

inline std::pair<int, int> parse_shape(const std::string& s) {
  std::smatch m;
  static const std::regex re(R"(^\s*(\d+)\s*,\s*(\d+)\s*$)");
  if (!std::regex_match(s, m, re)) throw InputError("--shape: expected n,k");
  int n = std::stoi(m[1]), k = std::stoi(m[2]);
  if (n < 2 || n > 3) throw BoundError("--shape: n must be 2 or 3");
  if (k > n) throw InputError("--shape: k must be at most n");
  return {n, k};
}

}  // namespace app_detail

inline Outcome fractions_check(const Options& o) {
  using namespace app_detail;
  auto in = load_marked(o.input);
  const Side side = side_of(o);
  Verdict v;
  if (o.mode != "infty") {
    if (!in.cat) throw PreconditionError("--mode " + o.mode + " needs a marked category");
    if (o.mode == "classical") v = side == Side::L ? check_clf_classical(*in.cat) : check_crf_classical(*in.cat);
    else v = side == Side::L ? check_proper_clf(*in.cat) : check_proper_crf(*in.cat);
  } else if (in.cat) {
    v = check_clf_infty(marked_nerve(*in.cat, 3).marked, side, default_shapes(side), true);
  } else {
    v = check_clf_infty(*in.sset, side, default_shapes(side, std::min(3, in.sset->sset.dim_bound())), false);
  }
  Outcome r;
  r.body = verdict_json(v);
  r.body["mode"] = o.mode;
  r.body["side"] = o.side;
  r.code = v.ok ? 0 : 1;
  return r;
}

inline Outcome fractions_lift(const Options& o) {
  using namespace app_detail;
  auto [n, k] = parse_shape(o.shape);
  auto in = load_marked(o.input);
  MarkedSSet x = in.cat ? marked_nerve(*in.cat, n).marked : *in.sset;
  if (x.sset.dim_bound() < n) throw BoundError("input is truncated below dimension " + std::to_string(n));
  const FractionShape& s = fraction_shape(n, k, side_of(o));
  Outcome r;
  r.body = {{"shape", s.label()}, {"ok", true}, {"witness", json::array()}};
  if (auto w = rlp_witness(x, s)) {
    r.body["ok"] = false;
    for (int d = 0; d <= 1; ++d)
      for (int c = 0; c < static_cast<int>(s.small.sset.size(d)); ++c)
        r.body["witness"].push_back(s.small.sset.name(d, c) + "->" + x.sset.describe(w->j_map.img[d][c]));
    r.code = 1;
  }
  return r;
}

inline Outcome localize_gz(const Options& o) {
  using namespace app_detail;
  MarkedCategory c = load_category(o.input);
  Fractions fr = gz_fractions(c, side_of(o));
  const FinCategory& k = fr.cat;
  Outcome r;
  json morphisms = json::array();
  for (int m = 0; m < k.num_morphisms(); ++m) {
    auto [xy, cls] = fr.class_of_morphism[m];
    const FractionHom& h = fr.homs[xy.first][xy.second];
    const Cospan& rep = h.cospans[h.representative[cls]];
    morphisms.push_back({{"name", k.morphisms[m].name},
                         {"from", k.objects[k.dom(m)]},
                         {"to", k.objects[k.cod(m)]},
                         {fr.side == Side::L ? "cospan" : "span",
                          {fr.work.cat.morphisms[rep.f].name, fr.work.cat.morphisms[rep.w].name}},
                         {"representatives", std::count(h.class_of.begin(), h.class_of.end(), cls)}});
  }
  json functor = json::object();
  for (int f = 0; f < c.cat.num_morphisms(); ++f) functor[c.cat.morphisms[f].name] = k.morphisms[fr.functor[f]].name;
  r.body = {{"side", o.side}, {"objects", k.objects}, {"morphisms", morphisms}, {"functor", functor},
            {"category", category_to_json(k)}};
  if (!o.emit_dot.empty()) {
    write_file(o.emit_dot, fractions_dot(c, fr, std::filesystem::path(o.input).stem().string()));
    r.body["dot"] = o.emit_dot;
  }
  return r;
}

inline Outcome localize_ex(const Options& o) {
  using namespace app_detail;
  auto in = load_marked(o.input);
  MarkedSSet x = in.cat ? marked_nerve(*in.cat, o.levels).marked : *in.sset;
  if (x.sset.dim_bound() < o.levels) throw BoundError("input is truncated below level " + std::to_string(o.levels));
  ExLevels ex = ex_levels(x, o.levels, side_of(o));
  Outcome r;
  json levels = json::array();
  for (int m = 0; m <= o.levels; ++m)
    levels.push_back({{"level", m}, {"size", ex.size(m)}, {"elements", ex.levels.names[m]}});
  json nondeg = json::array();
  for (int m = 0; m <= o.levels; ++m) nondeg.push_back(ex.sset().size(m));
  r.body = {{"side", o.side}, {"levels", levels}, {"nondegenerate", nondeg}};
  if (!o.emit_sset.empty()) {
    write_file(o.emit_sset, sset_to_json(ex.sset()).dump(2) + "\n");
    r.body["sset"] = o.emit_sset;
  }
  return r;
}

inline Outcome localize_compare(const Options& o) {
  using namespace app_detail;
  MarkedCategory c = load_category(o.input);
  auto cmp = compare_localizations(c);
  json table = json::array();
  auto chk = localization_agreement(c, Side::L, &table);
  Outcome r;
  r.body = {{"iso", cmp.iso}, {"hom_table", table}, {"ok", cmp.iso && chk.ok}};
  if (!cmp.detail.empty()) r.body["detail"] = cmp.detail;
  else if (!chk.detail.empty()) r.body["detail"] = chk.detail;
  r.code = cmp.iso && chk.ok ? 0 : 1;
  return r;
}

inline Outcome mapspace(const Options& o) {
  using namespace app_detail;
  MarkedCategory c = load_category(o.input);
  const int x = object_of(c, o.from, "--from"), y = object_of(c, o.to, "--to");
  const Side side = side_of(o);
  Pi0Check pi = pi0_mapping_check(c, x, y, side);
  MarkedNerve nv = marked_nerve(c, 2);
  FractionSpace fs = side == Side::L ? fraction_space_LF(nv.marked, x, y, 1) : fraction_space_RF(nv.marked, x, y, 1);
  Outcome r;
  r.body = {{"from", o.from}, {"to", o.to}, {"side", o.side}, {"sizes", {fs.size(0), fs.size(1)}},
            {"components", pi.components}, {"classes", pi.classes}, {"bijection", pi.ok}, {"ok", pi.ok}};
  if (!pi.detail.empty()) r.body["detail"] = pi.detail;
  r.code = pi.ok ? 0 : 1;
  return r;
}

inline Outcome graph_a1(const Options& o) {
  using namespace app_detail;
  auto [g, expect] = load_graph(o.input);
  int base = 0;
  if (!o.base.empty()) {
    base = g.find(o.base);
    if (base < 0) throw InputError("--base: unknown vertex '" + o.base + "'");
  } else if (expect.contains("base")) {
    base = vertex_from_json(g, expect.at("base"), o.input + ": /expect/base");
  }
  auto p = a1_presentation(g, base);
  auto [rank, torsion] = abelianization_rank(p.group);
  json relators = json::array(), loops = json::array();
  for (auto const& w : p.group.relators) relators.push_back(word_string(p.group, w));
  for (auto const& l : p.generator_loops) {
    json names = json::array();
    for (int v : l) names.push_back(g.name(v));
    loops.push_back(names);
  }
  Outcome r;
  r.body = {{"base", g.name(base)}, {"generators", p.group.generators}, {"relators", relators},
            {"generator_loops", loops}, {"rank", rank}, {"torsion", torsion}, {"ok", true}};
  if (o.oracle_bound > 0) {
    auto a = a1_oracle_agreement(g, base, o.oracle_bound);
    r.body["oracle"] = {{"loop_length", o.oracle_bound}, {"loops", a.loops}, {"classes", a.classes}, {"agrees", a.ok}};
    if (!a.ok) {
      r.body["ok"] = false;
      r.body["detail"] = a.detail;
      r.code = 1;
    }
  }
  return r;
}

inline Outcome graph_nerve_box(const Options& o) {
  using namespace app_detail;
  auto [g, expect] = load_graph(o.input);
  if (o.box.empty()) throw InputError("--box is required");
  OpenBox b = load_file(o.box, [&g](const json& j) { return box_from_json(g, j); });
  auto res = open_box_filler_search(g, b.n, b.missing_axis, b.missing_end, b.faces, o.window);
  Outcome r;
  r.body = {{"found", res.found}, {"window", res.window}, {"ok", res.found}};
  r.body["filler"] = res.found ? cube_to_json(g, res.filler) : json(nullptr);
  if (!res.found) r.body["detail"] = "no filler with extents up to the window; not a proof that none exists";
  r.code = res.found ? 0 : 1;
  return r;
}

inline Outcome graph_pullback_probe(const Options& o) {
  using namespace app_detail;
  if (o.f.empty() || o.g.empty() || o.vertex.empty()) throw InputError("--f, --g and --vertex are required");
  GraphMorphism f = load_file(o.f, morphism_from_json);
  GraphMorphism g = load_file(o.g, morphism_from_json);
  PullbackGraph pb = pullback_graph_lazy(f, g);
  const Graph& k = f.target;
  auto center = load_file(o.vertex, [&](const json& j) {
    using namespace io_detail;
    PullbackVertex v{vertex_from_json(f.source, field(j, "", "x"), "/x"), vertex_from_json(g.source, field(j, "", "y"), "/y"),
                     line_from_json(k, field(j, "", "p1"), "/p1"), line_from_json(k, field(j, "", "p2"), "/p2")};
    return pb.graph.canonical(pullback_code(v));
  });
  auto ball = pb.graph.ball(center, o.radius, o.slack);
  json vs = json::array();
  bool commutes = true;
  for (auto const& v : ball) {
    const int x = pb.pi_G(v), y = pb.pi_H(v);
    LineMap p1 = pb.pi_1(v), p2 = pb.pi_2(v);
    commutes = commutes && p1.start() == p2.start() && p1.end() == f.map[x] && p2.end() == g.map[y];
    vs.push_back({{"vertex", pb.graph.describe(v)}, {"G", f.source.name(x)}, {"H", g.source.name(y)},
                  {"K", k.name(pb.pi_K(v))}});
  }
  Outcome r;
  r.body = {{"center", pb.graph.describe(center)}, {"radius", o.radius}, {"slack", o.slack}, {"size", ball.size()},
            {"ball", vs}, {"commutes", commutes}, {"ok", commutes}};
  r.code = commutes ? 0 : 1;
  return r;
}

inline Outcome corpus_run_cmd(const Options& o, std::ostream& err) {
  CorpusRun run = corpus_run(o.input, o.jobs, o.oracle_bound);
  for (auto const& w : run.warnings) err << "warning: " << w << "\n";
  for (auto const& e : run.report["files"]) {
    if (e.contains("error")) err << e["file"].get<std::string>() << ": " << e["error"].get<std::string>() << "\n";
    else if (!e["ok"].get<bool>())
      for (auto const& c : e["checks"])
        if (!c["ok"].get<bool>()) err << e["file"].get<std::string>() << ": " << c["name"].get<std::string>() << " failed\n";
  }
  Outcome r;
  r.body = run.report;
  r.body["ok"] = run.errors == 0 && run.failures == 0;
  r.code = run.errors ? 2 : run.failures ? 1 : 0;
  return r;
}

inline Outcome export_dot(const Options& o) {
  using namespace app_detail;
  MarkedCategory c = load_category(o.input);
  const std::string name = std::filesystem::path(o.input).stem().string();
  std::string text = o.of == "category" ? category_dot(c, name) : fractions_dot(c, gz_fractions(c, side_of(o)), name);
  Outcome r;
  if (o.emit_dot.empty()) {
    r.text = text;
  } else {
    write_file(o.emit_dot, text);
    r.body = {{"dot", o.emit_dot}, {"ok", true}};
  }
  return r;
}

/// Parses the arguments (without the program name), runs the command and
/// writes the verdict. Returns the exit code: 0 passed, 1 failed with a
/// witness, 2 for usage and input errors.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Calculi of fractions, localizations and discrete homotopy checks", "fraction-forge"};
  app.require_subcommand(1);
  app.add_flag("--json,!--no-json", o.json_out, "print the JSON verdict on standard output (default on)");
  std::string leaf;
  auto leaf_cmd = [&](CLI::App* parent, const std::string& name, const std::string& help) {
    CLI::App* s = parent->add_subcommand(name, help);
    const std::string full = parent == &app ? name : parent->get_name() + " " + name;
    s->callback([&leaf, full] { leaf = full; });
    s->add_flag("--json,!--no-json", o.json_out, "print the JSON verdict (default on)");
    return s;
  };
  auto side = [&](CLI::App* s) { s->add_option("--side", o.side, "L or R")->check(CLI::IsMember({"L", "R"})); };
  auto input = [&](CLI::App* s, const std::string& what) { s->add_option("--input,-i", o.input, what)->required(); };

  std::map<std::string, std::function<Outcome()>> dispatch;

  CLI::App* fr = app.add_subcommand("fractions", "calculus of fractions checks");
  fr->require_subcommand(1);
  {
    auto* s = leaf_cmd(fr, "check", "check a calculus of fractions");
    input(s, "marked category or marked simplicial set (JSON)");
    side(s);
    s->add_option("--mode", o.mode, "classical, proper or infty")->check(CLI::IsMember({"classical", "proper", "infty"}));
    dispatch["fractions check"] = [&] { return fractions_check(o); };
    auto* l = leaf_cmd(fr, "lift", "lift against one fraction shape");
    input(l, "marked category or marked simplicial set (JSON)");
    side(l);
    l->add_option("--shape", o.shape, "n,k with n <= 3");
    dispatch["fractions lift"] = [&] { return fractions_lift(o); };
  }
  CLI::App* lz = app.add_subcommand("localize", "localizations");
  lz->require_subcommand(1);
  {
    auto* s = leaf_cmd(lz, "gz", "category of fractions");
    input(s, "marked category (JSON)");
    side(s);
    s->add_option("--emit-dot", o.emit_dot, "write the localization as DOT");
    dispatch["localize gz"] = [&] { return localize_gz(o); };
    auto* e = leaf_cmd(lz, "ex", "levels of the marked Ex functor");
    input(e, "marked category or marked simplicial set (JSON)");
    side(e);
    e->add_option("--levels", o.levels, "top level, at most 3")->check(CLI::Range(0, 3));
    e->add_option("--emit-sset", o.emit_sset, "write the truncation as a simplicial set");
    dispatch["localize ex"] = [&] { return localize_ex(o); };
    auto* c = leaf_cmd(lz, "compare", "compare fractions, colimits, mapping spaces and Ho(Ex)");
    input(c, "marked category (JSON)");
    dispatch["localize compare"] = [&] { return localize_compare(o); };
  }
  {
    auto* s = leaf_cmd(&app, "mapspace", "components of the space of fractions");
    input(s, "marked category (JSON)");
    side(s);
    s->add_option("--from", o.from, "source object")->required();
    s->add_option("--to", o.to, "target object")->required();
    dispatch["mapspace"] = [&] { return mapspace(o); };
  }
  CLI::App* gr = app.add_subcommand("graph", "discrete homotopy of graphs");
  gr->require_subcommand(1);
  {
    auto* a = leaf_cmd(gr, "a1", "presentation and abelianization of A1");
    input(a, "graph (JSON)");
    a->add_option("--base", o.base, "base vertex");
    a->add_option("--oracle-bound", o.oracle_bound, "loop length for the oracle, 0 to skip")->check(CLI::Range(0, 10));
    dispatch["graph a1"] = [&] { return graph_a1(o); };
    auto* b = leaf_cmd(gr, "nerve-box", "fill an open box in the cubical nerve");
    input(b, "graph (JSON)");
    b->add_option("--box", o.box, "open box (JSON)")->required();
    b->add_option("--window", o.window, "largest extent searched")->check(CLI::Range(1, 12));
    dispatch["graph nerve-box"] = [&] { return graph_nerve_box(o); };
    auto* p = leaf_cmd(gr, "pullback-probe", "probe the homotopy pullback of a cospan");
    p->add_option("--f", o.f, "first morphism (JSON)")->required();
    p->add_option("--g", o.g, "second morphism (JSON)")->required();
    p->add_option("--vertex", o.vertex, "centre vertex (JSON)")->required();
    p->add_option("--radius", o.radius, "ball radius")->check(CLI::Range(0, 4));
    p->add_option("--slack", o.slack, "walk length slack per step")->check(CLI::Range(0, 4));
    dispatch["graph pullback-probe"] = [&] { return graph_pullback_probe(o); };
  }
  CLI::App* cp = app.add_subcommand("corpus", "corpus runs");
  cp->require_subcommand(1);
  {
    auto* s = leaf_cmd(cp, "run", "run the invariant suite over a directory");
    input(s, "corpus directory");
    s->add_option("--jobs,-j", o.jobs, "worker threads")->check(CLI::Range(1, 64));
    s->add_option("--oracle-bound", o.oracle_bound, "loop length for the A1 oracle, 0 to skip")->check(CLI::Range(0, 10));
    dispatch["corpus run"] = [&] { return corpus_run_cmd(o, err); };
  }
  CLI::App* ex = app.add_subcommand("export", "exports");
  ex->require_subcommand(1);
  {
    auto* s = leaf_cmd(ex, "dot", "Graphviz DOT of a category or its localization");
    input(s, "marked category (JSON)");
    side(s);
    s->add_option("--of", o.of, "gz or category")->check(CLI::IsMember({"gz", "category"}));
    s->add_option("--emit-dot", o.emit_dot, "write to a file instead of standard output");
    dispatch["export dot"] = [&] { return export_dot(o); };
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome res;
  try {
    res = dispatch.at(leaf)();
  } catch (const InvariantError& e) {
    err << "invariant violated: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

  if (res.text) {
    out << *res.text;
  } else if (o.json_out) {
    json inputs = json::array();
    for (const std::string* p : {&o.input, &o.box, &o.f, &o.g, &o.vertex})
      if (!p->empty() && std::filesystem::is_regular_file(*p)) inputs.push_back({{"path", *p}, {"sha256", file_sha256(*p)}});
    json v = res.body;
    v["command"] = args;
    v["inputs"] = inputs;
    if (!v.contains("ok")) v["ok"] = res.code == 0;
    out << v.dump(2) << "\n";
  }
  err << leaf << ": " << (res.code == 0 ? "ok" : "FAILED") << " (" << static_cast<long long>(ms) << " ms)\n";
  return res.code;
}

}  // namespace ff::cli

#endif
