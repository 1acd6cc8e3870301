#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fraction_forge/exfunctor/ex.hpp"
#include "oracles/kan_ex.hpp"
#include "support.hpp"

using namespace ff;
using namespace ff::test;

namespace {

const test::CorpusCategory& corpus_entry(const std::string& name) {
  static auto all = test::corpus_categories();
  for (auto const& c : all)
    if (c.name == name) return c;
  throw std::runtime_error("no corpus entry " + name);
}

MarkedSSet corpus_nerve(const std::string& name, int bound) { return marked_nerve(corpus_entry(name).cat, bound).marked; }

void check_against_kan(const MarkedSSet& x, int bound) {
  std::string why = oracle::kan_mismatch(x, bound);
  INFO(why);
  CHECK(why.empty());
}

int index_in(const std::vector<Simplex>& v, const Simplex& s) {
  auto it = std::find(v.begin(), v.end(), s);
  return it == v.end() ? -1 : static_cast<int>(it - v.begin());
}

}  // namespace

TEST_CASE("subdivided simplices have the expected vertices and markings", "[exfunctor]") {
  for (int n = 0; n <= 3; ++n) {
    const auto& sd = sd_plus(n);
    const auto& so = sd_op(n);
    CHECK(sd.nerve.sset.size(0) == (1u << (n + 1)) - 1u);
    CHECK(sd.nerve.sset.top_dim() == n);
    std::size_t top = 1;
    for (int i = 2; i <= n + 1; ++i) top *= i;
    CHECK(sd.nerve.sset.size(n) == top);
    std::size_t by_max = 0, by_min = 0;
    for (uint32_t a = 1; a < (1u << (n + 1)); ++a)
      for (uint32_t b = 1; b < (1u << (n + 1)); ++b)
        if (a != b && (a & b) == a) {
          by_max += oracle::top_bit(a) == oracle::top_bit(b);
          by_min += std::countr_zero(a) == std::countr_zero(b);
        }
    CHECK(sd.nerve.marked_count() == by_max);
    CHECK(so.nerve.marked_count() == by_min);
  }
  CHECK(sd_plus(0).nerve.marked_count() == 0);
  CHECK(sd_plus(1).nerve.marked_count() == 1);
  CHECK(sd_plus(2).nerve.marked_count() == 6);
  const auto& s1 = sd_plus(1);
  const SSet& x = s1.nerve.sset;
  for (int e = 0; e < static_cast<int>(x.size(1)); ++e) {
    auto v = x.vertices(x.cell(1, e));
    bool want = s1.subsets[v[0]] == 0b10u && s1.subsets[v[1]] == 0b11u;
    CHECK(s1.nerve.is_marked(x.cell(1, e)) == want);
  }
}

TEST_CASE("subdivision is a functor into marked simplicial sets", "[exfunctor]") {
  auto monos = [](int a, int b) {
    std::vector<Mono> out;
    std::vector<int> cur;
    std::function<void(int)> go = [&](int lo) {
      if (static_cast<int>(cur.size()) == a + 1) {
        out.push_back(Mono::from_values(b, cur));
        return;
      }
      for (int v = lo; v <= b; ++v) {
        cur.push_back(v);
        go(v);
        cur.pop_back();
      }
    };
    go(0);
    return out;
  };
  for (Side side : {Side::L, Side::R})
    for (int a = 0; a <= 2; ++a)
      for (int b = 0; b <= 2; ++b)
        for (int c = 0; c <= 3; ++c)
          for (auto const& f : monos(a, b))
            for (auto const& g : monos(b, c)) {
              SMap sf = subdivision_map(f, side), sg = subdivision_map(g, side);
              CHECK(is_marked_map(subdivision(a, side).nerve, subdivision(b, side).nerve, sf));
              CHECK(compose(sg, sf) == subdivision_map(f.then(g), side));
            }
}

TEST_CASE("Sd of standard simplices is the subdivided simplex", "[exfunctor]") {
  for (int n = 0; n <= 3; ++n) {
    Subdivided s = subdivide(simplex_at(n, n), n);
    s.marked.sset.check_identities();
    CHECK(find_marked_isomorphism(s.marked, sd_plus(n).nerve));
  }
  for (int n = 0; n <= 2; ++n) CHECK(find_marked_isomorphism(subdivide_op(simplex_at(n, n), n), sd_op(n).nerve));
}

TEST_CASE("Sd of the boundary and of the inner horn", "[exfunctor]") {
  auto by_max = [](uint32_t a, uint32_t b) { return subset_max(a) == subset_max(b); };
  Subdivided b = subdivide(hollow_triangle(1), 1);
  CHECK(b.marked.sset.size(0) == 6);
  CHECK(b.marked.sset.size(1) == 6);
  CHECK(b.marked.marked_count() == 3);
  auto proper = make_subset_poset(2, true, [](uint32_t a) { return a != 0b111u; }, by_max);
  REQUIRE(proper->nerve.sset.dim_bound() == 1);
  CHECK(find_marked_isomorphism(b.marked, proper->nerve));

  Subdivided h = subdivide(horn21(1), 1);
  CHECK(h.marked.sset.size(0) == 5);
  std::set<std::string> names;
  for (int v = 0; v < static_cast<int>(h.marked.sset.size(0)); ++v) names.insert(h.marked.sset.name(0, v));
  for (auto const& n : names) {
    CHECK(n.find("{0,1,2}") == std::string::npos);
    CHECK(n.find("0<2") == std::string::npos);
  }
  auto horn_sd = make_subset_poset(2, true, [](uint32_t a) { return a != 0b111u && a != 0b101u; }, by_max);
  CHECK(find_marked_isomorphism(h.marked, horn_sd->nerve));
}

TEST_CASE("Sd matches a colimit computed by union-find", "[exfunctor][oracle]") {
  struct Input {
    std::string name;
    SSet x;
  };
  std::vector<Input> inputs = {{"simplex2", simplex_at(2, 2)},  {"boundary", hollow_triangle(2)},
                               {"horn", horn21(2)},             {"circle", circle(2)},
                               {"pinched", pinched_triangle(2)}, {"iso", corpus_nerve("walking_iso_marked", 2).sset}};
  for (auto const& in : inputs) {
    INFO(in.name);
    Subdivided s = subdivide(in.x, 2);
    s.marked.sset.check_identities();
    const int top = in.x.top_dim();
    for (int k = 0; k <= 2; ++k) CHECK(s.marked.sset.all_simplices(k).size() == oracle::sd_colimit_count(in.x, k, top));
  }
}

TEST_CASE("Ex levels agree with a direct construction of Kan's Ex", "[exfunctor][oracle]") {
  check_against_kan(maximal_marking(simplex_at(0, 2)), 2);
  check_against_kan(maximal_marking(simplex_at(1, 3)), 3);
  check_against_kan(maximal_marking(hollow_triangle(2)), 2);
  check_against_kan(maximal_marking(horn21(2)), 2);
  check_against_kan(maximal_marking(circle(2)), 2);
  check_against_kan(maximal_marking(corpus_nerve("chain2_all", 2).sset), 2);
  // marked variants
  check_against_kan(minimal_marking(simplex_at(1, 2)), 2);
  check_against_kan(corpus_nerve("chain2_first", 2), 2);
  check_against_kan(corpus_nerve("walking_iso_marked", 2), 2);
}

TEST_CASE("Ex levels of the walking arrow", "[exfunctor]") {
  CHECK(ex_plus(maximal_marking(simplex_at(1, 1)), 1).size(1) == 5);
  CHECK(ex_plus(minimal_marking(simplex_at(1, 1)), 1).size(1) == 3);
  CHECK(ex_plus(minimal_marking(simplex_at(1, 1)), 1).size(0) == 2);
  CHECK_THROWS_AS(ex_plus(maximal_marking(simplex_at(1, 1)), 2), BoundError);
  CHECK_THROWS_AS(ex_plus(maximal_marking(simplex_at(1, 4)), 4), BoundError);
}

TEST_CASE("the unit sends an edge to the cospan (f, id)", "[exfunctor]") {
  MarkedSSet x = maximal_marking(simplex_at(1, 2));
  ExLevels ex = ex_plus(x, 2);
  auto unit = ex_unit(x, ex);
  const auto all1 = x.sset.all_simplices(1);
  const int f = index_in(all1, x.sset.cell(1, 0));
  const auto& sd = sd_plus(1);
  const SMap& g = ex.maps[1][unit[1][f]];
  for (int e = 0; e < static_cast<int>(sd.nerve.sset.size(1)); ++e) {
    auto v = sd.nerve.sset.vertices(sd.nerve.sset.cell(1, e));
    if (sd.subsets[v[0]] == 0b01u) CHECK(g.img[1][e] == x.sset.cell(1, 0));
    if (sd.subsets[v[0]] == 0b10u) CHECK(g.img[1][e] == degenerate(Simplex{0, 0, 1}, 0));
  }
  // simplicial
  for (int m = 1; m <= 2; ++m) {
    auto xs = x.sset.all_simplices(m);
    auto lower = x.sset.all_simplices(m - 1);
    for (int k = 0; k < static_cast<int>(xs.size()); ++k)
      for (int i = 0; i <= m; ++i)
        CHECK(ex.levels.face[m][unit[m][k]][i] == unit[m - 1][index_in(lower, x.sset.face(xs[k], i))]);
  }
}

TEST_CASE("the unit is natural", "[exfunctor]") {
  MarkedSSet x = corpus_nerve("chain2_first", 2);
  MarkedSSet y = corpus_nerve("chain3_all", 2);
  // chain2 -> chain3 on the first two arrows
  const auto& cx = corpus_entry("chain2_first").cat.cat;
  const auto& cy = corpus_entry("chain3_all").cat.cat;
  VertexIndex yi(y.sset);
  SMap g = map_from_vertices(x.sset, yi, [&](int v) { return cy.find_object(cx.objects[v]); });
  REQUIRE(is_marked_map(x, y, g));
  ExLevels ex = ex_plus(x, 2), ey = ex_plus(y, 2);
  auto ux = ex_unit(x, ex), uy = ex_unit(y, ey);
  auto eg = ex_map(ex, ey, g);
  for (int m = 0; m <= 2; ++m) {
    auto xs = x.sset.all_simplices(m);
    auto ys = y.sset.all_simplices(m);
    for (int k = 0; k < static_cast<int>(xs.size()); ++k)
      CHECK(eg[m][ux[m][k]] == uy[m][index_in(ys, image(g, xs[k]))]);
  }
}

TEST_CASE("the right-side Ex is the opposite of Ex_+ of the opposite", "[exfunctor]") {
  for (auto name : {"arrow_marked", "chain2_first", "span_one"}) {
    INFO(name);
    MarkedSSet x = corpus_nerve(name, 2);
    ExLevels direct = ex_op(x, 2);
    ExLevels via = ex_plus(opposite(x), 2);
    for (int m = 0; m <= 2; ++m) CHECK(direct.size(m) == via.size(m));
    CHECK(find_isomorphism(direct.sset(), opposite(via.sset())));
  }
}

TEST_CASE("Ex_+ of a nerve with left fractions fills inner 2-horns", "[exfunctor]") {
  for (auto const& c : test::corpus_categories()) {
    if (!c.expect.at("clf").get<bool>() || c.cat.cat.num_objects() > 5) continue;
    INFO(c.name);
    ExLevels ex = ex_plus(marked_nerve(c.cat, 2).marked, 2);
    CHECK_FALSE(ex_horn_witness(ex, 2, 1));
  }
  REQUIRE_FALSE(corpus_entry("parallel_one").expect.at("clf").get<bool>());
  CHECK(ex_horn_witness(ex_plus(corpus_nerve("parallel_one", 2), 2), 2, 1));
}

TEST_CASE("marked edges become invertible in the homotopy category of Ex_+", "[exfunctor]") {
  for (auto name : {"arrow_marked", "chain2_first", "cospan_one"}) {
    INFO(name);
    MarkedSSet x = corpus_nerve(name, 2);
    ExLevels ex = ex_plus(x, 2);
    auto unit = ex_unit(x, ex);
    HoCategory ho = ho_of_qcat(ex.sset());
    auto edges = x.sset.all_simplices(1);
    for (int e = 0; e < static_cast<int>(x.sset.size(1)); ++e) {
      Simplex img = ex.ez.ez[1][unit[1][index_in(edges, x.sset.cell(1, e))]];
      CHECK(ho.cat.is_iso(ho.morphism_of(img)) == x.is_marked(x.sset.cell(1, e)));
    }
  }
}

TEST_CASE("max is a marked homotopy equivalence with section i -> [0, i]", "[exfunctor]") {
  for (int n = 1; n <= 3; ++n) {
    INFO(n);
    const auto& sd = sd_plus(n);
    MarkedSSet simplex = minimal_marking(simplex_at(n, n));
    VertexIndex si(simplex.sset);
    SMap maxmap = map_from_vertices(sd.nerve.sset, si, [&](int v) { return subset_max(sd.subsets[v]); });
    SMap section = map_from_vertices(simplex.sset, *sd.index, [&](int i) { return sd.vertex_of((2u << i) - 1u); });
    CHECK(is_marked_map(sd.nerve, simplex, maxmap));
    CHECK(is_marked_map(simplex, sd.nerve, section));
    CHECK(compose(maxmap, section) == identity_map(simplex.sset));
    Cylinder cyl = cylinder(sd.nerve);
    SMap h = map_from_vertices(cyl.prod.sset, *sd.index, [&](int v) {
      auto [a, e] = cyl.prod.pairs[0][v];
      uint32_t s = sd.subsets[a.cell];
      return e.cell == 0 ? a.cell : sd.vertex_of((2u << subset_max(s)) - 1u);
    });
    auto hc = is_marked_homotopy(cyl, sd.nerve, sd.nerve, h);
    REQUIRE(hc.ok);
    CHECK(hc.from == identity_map(sd.nerve.sset));
    CHECK(hc.to == compose(section, maxmap));
  }
}
