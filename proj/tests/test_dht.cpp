#include <catch2/catch_amalgamated.hpp>

#include <deque>
#include <random>
#include <thread>

#include "fraction_forge/dht/dht.hpp"
#include "support.hpp"
#include "support_dht.hpp"

using namespace ff;
using namespace ff::test;

namespace {

int bfs_distance(const Graph& g, int a, int b) {
  std::vector<int> d(g.size(), -1);
  std::deque<int> q{a};
  d[a] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int v : g.neighbors(u))
      if (d[v] < 0) {
        d[v] = d[u] + 1;
        q.push_back(v);
      }
  }
  return d[b];
}

// Value of the face by evaluation far out along the axis.
bool face_matches_evaluation(const StableCube& c, int i, int eps) {
  StableCube f = face(c, i, eps);
  bool ok = true;
  std::vector<int> ext = c.extent;
  ext.erase(ext.begin() + (i - 1));
  // compare on a window large enough for both, up to translation fixed by the trim
  StableCube g = cube_detail::tabulate(ext, [&](const std::vector<int>& q) {
    auto p = q;
    p.insert(p.begin() + (i - 1), eps ? 1000 : -1000);
    return c.at(p);
  });
  ok = trim(g) == f;
  return ok;
}

}  // namespace

TEST_CASE("box product and hom graph", "[dht]") {
  Graph sq = box_product(interval_graph(1), interval_graph(1));
  CHECK(sq.size() == 4);
  CHECK(sq.num_edges() == 4);
  Graph c5 = cycle_graph(5);
  Graph unit = box_product(c5, interval_graph(0));
  CHECK(unit.size() == 5);
  CHECK(unit.edges() == c5.edges());
  HomGraph h = hom_graph(interval_graph(0), c5);
  CHECK(h.graph.edges() == c5.edges());
  // maps I_1 -> C_4: reflexive ordered adjacent pairs
  CHECK(hom_graph(interval_graph(1), cycle_graph(4)).maps.size() == 12);
  // adjacency in hom(I_1, C_4) is pointwise
  HomGraph h14 = hom_graph(interval_graph(1), cycle_graph(4));
  Graph c4 = cycle_graph(4);
  for (std::size_t a = 0; a < h14.maps.size(); ++a)
    for (std::size_t b = 0; b < h14.maps.size(); ++b)
      CHECK(h14.graph.adjacent(static_cast<int>(a), static_cast<int>(b)) ==
            (c4.adjacent(h14.maps[a][0], h14.maps[b][0]) && c4.adjacent(h14.maps[a][1], h14.maps[b][1])));
}

TEST_CASE("homotopy search", "[dht]") {
  Graph i0 = interval_graph(0), i1 = interval_graph(1), c6 = cycle_graph(6);
  auto same = homotopy_search(i1, i1, identity_map(i1), identity_map(i1), 3);
  REQUIRE(same.found);
  CHECK(same.length() == 0);
  auto consts = homotopy_search(i0, i1, {0}, {1}, 3);
  REQUIRE(consts.found);
  CHECK(consts.length() == 1);
  auto anti = homotopy_search(i0, c6, {0}, {3}, 6);
  REQUIRE(anti.found);
  CHECK(anti.length() == bfs_distance(c6, 0, 3));
  CHECK(anti.length() == 3);
  CHECK_FALSE(homotopy_search(i0, c6, {0}, {3}, 2).found);
  // a homotopy is a graph map out of the box product
  Graph i2 = interval_graph(2);
  GraphMap constant(3, 0);
  auto h = homotopy_search(i2, i2, identity_map(i2), constant, 4);
  REQUIRE(h.found);
  CHECK(is_graph_map(box_product(i2, interval_graph(h.length())), i2, homotopy_as_map(i2, h)));
  CHECK(h.stages.front() == identity_map(i2));
  CHECK(h.stages.back() == constant);
}

TEST_CASE("homotopy equivalence search", "[dht]") {
  Graph i0 = interval_graph(0);
  for (int m = 1; m <= 4; ++m) {
    auto r = is_homotopy_equiv_search(interval_graph(m), i0, m);
    REQUIRE(r.found);
    CHECK(r.beta.length() == 0);
    CHECK(r.alpha.stages.front() == compose(r.g, r.f));
  }
  CHECK_FALSE(is_homotopy_equiv_search(cycle_graph(5), i0, 6).found);
  // a relabelled copy is found with trivial homotopies
  Graph c5 = cycle_graph(5);
  Graph d({"a", "b", "c", "d", "e"});
  d.add_edge(0, 2);
  d.add_edge(2, 4);
  d.add_edge(4, 1);
  d.add_edge(1, 3);
  d.add_edge(3, 0);
  auto r = is_homotopy_equiv_search(c5, d, 2);
  REQUIRE(r.found);
  CHECK(r.alpha.length() == 0);
  CHECK(r.beta.length() == 0);
}

TEST_CASE("stable cubes: trim and basic operators", "[dht][cube]") {
  Graph c5 = cycle_graph(5);
  StableCube w = walk_cube({0, 0, 1, 2, 2, 2});
  CHECK(w.extent == std::vector<int>{2});
  CHECK(w.values == std::vector<int>{0, 1, 2});
  CHECK(face(w, 1, 0) == vertex_cube(0));
  CHECK(face(w, 1, 1) == vertex_cube(2));
  CHECK(walk_cube({3, 3, 3}) == StableCube{{0}, {3}});
  CHECK(face(degeneracy(w, 1), 1, 0) == w);
  CHECK_THROWS_AS(face(w, 2, 0), InputError);
  CHECK_THROWS_AS(connection(vertex_cube(0), 1, 0), InputError);
  std::mt19937 rng(7);
  for (int k = 0; k < 300; ++k) {
    StableCube c = random_cube(c5, rng, 1 + k % 3, 3);
    CHECK(trim(trim(c)) == trim(c));
    CHECK(is_graph_cube(c5, c));
    for (int i = 1; i <= c.dim(); ++i)
      for (int e = 0; e <= 1; ++e) {
        CHECK(is_trim_normal(face(c, i, e)));
        CHECK(face_matches_evaluation(c, i, e));
        CHECK(is_trim_normal(connection(c, i, e)));
        CHECK(is_graph_cube(c5, connection(c, i, e)));
      }
    for (int i = 1; i <= c.dim() + 1; ++i) CHECK(is_trim_normal(degeneracy(c, i)));
  }
}

TEST_CASE("stable cubes satisfy the cubical identities", "[dht][cube]") {
  Graph c5 = cycle_graph(5);
  Graph t6 = tree6();
  Graph k4 = complete_graph(4);
  std::mt19937 rng(2024);
  int instances = 0;
  for (const Graph* g : {&c5, &t6, &k4}) {
    for (int k = 0; k < 400; ++k) {
      const int n = 1 + k % 3;
      StableCube x = random_cube(*g, rng, n, 3);
      ++instances;
      for (int e = 0; e <= 1; ++e)
        for (int e2 = 0; e2 <= 1; ++e2) {
          // faces
          for (int i = 1; i < n; ++i)
            for (int j = 1; j <= i; ++j)
              CHECK(face(face(x, j, e2), i, e) == face(face(x, i + 1, e), j, e2));
          // degeneracies then faces
          for (int i = 1; i <= n + 1; ++i)
            for (int j = 1; j <= n + 1; ++j) {
              StableCube lhs = face(degeneracy(x, j), i, e);
              if (j < i) CHECK(lhs == degeneracy(face(x, i - 1, e), j));
              if (j == i) CHECK(lhs == x);
              if (j > i) CHECK(lhs == degeneracy(face(x, i, e), j - 1));
            }
          // degeneracies
          for (int i = 1; i <= n + 1; ++i)
            for (int j = 1; j <= i; ++j) CHECK(degeneracy(degeneracy(x, i), j) == degeneracy(degeneracy(x, j), i + 1));
          // connections
          for (int i = 1; i <= n + 1; ++i)
            for (int j = 1; j <= n; ++j) {
              if (j > i && i <= n + 1)
                CHECK(connection(connection(x, j, e2), i, e) == connection(connection(x, i, e), j + 1, e2));
              if (j == i) CHECK(connection(connection(x, i, e), i, e) == connection(connection(x, i, e), i + 1, e));
            }
          // connections then faces, x of dimension n, connection on axis j
          for (int j = 1; j <= n; ++j)
            for (int i = 1; i <= n + 1; ++i) {
              StableCube lhs = face(connection(x, j, e2), i, e);
              if (j < i - 1) CHECK(lhs == connection(face(x, i - 1, e), j, e2));
              if ((j == i - 1 || j == i) && e == e2) CHECK(lhs == x);
              if ((j == i - 1 || j == i) && e != e2) CHECK(lhs == degeneracy(face(x, j, e), j));
              if (j > i) CHECK(lhs == connection(face(x, i, e), j - 1, e2));
            }
          // degeneracies then connections
          for (int i = 1; i <= n + 1; ++i)
            for (int j = 1; j <= n + 1; ++j) {
              StableCube lhs = connection(degeneracy(x, j), i, e);
              if (j < i) CHECK(lhs == degeneracy(connection(x, i - 1, e), j));
              if (j == i) CHECK(lhs == degeneracy(degeneracy(x, i), i));
              if (j > i) CHECK(lhs == degeneracy(connection(x, i, e), j + 1));
            }
        }
    }
  }
  CHECK(instances >= 1000);
}

TEST_CASE("open box fillers", "[dht][cube]") {
  Graph c4 = cycle_graph(4), c5 = cycle_graph(5);
  SECTION("n = 1 fills degenerately") {
    auto r = open_box_filler_search(c5, 1, 1, 0, {{{1, 1}, vertex_cube(2)}}, 4);
    REQUIRE(r.found);
    CHECK(r.filler == degeneracy(vertex_cube(2), 1));
  }
  SECTION("composable walks in C5") {
    std::vector<int> p{0, 1, 2}, q{2, 3, 4, 0};
    BoxFaces b{{{1, 0}, walk_cube({0})}, {{2, 0}, walk_cube(p)}, {{1, 1}, walk_cube(q)}};
    auto r = open_box_filler_search(c5, 2, 2, 1, b, 8);
    REQUIRE(r.found);
    CHECK(r.filler.extent[0] <= 5);
    CHECK(is_graph_cube(c5, r.filler));
    for (auto const& [k, f] : b) CHECK(face(r.filler, k.first, k.second) == f);
  }
  SECTION("two loops at a vertex of C4") {
    BoxFaces b{{{1, 1}, walk_cube({0})}, {{2, 0}, walk_cube({0, 1, 2, 3, 0})}, {{2, 1}, walk_cube({0, 3, 0})}};
    auto r = open_box_filler_search(c4, 2, 1, 0, b, 8);
    REQUIRE(r.found);
    for (auto const& [k, f] : b) CHECK(face(r.filler, k.first, k.second) == f);
  }
  SECTION("boxes cut from random cubes refill") {
    std::mt19937 rng(11);
    Graph t6 = tree6();
    for (const Graph* g : {&c4, &c5, &t6})
      for (int k = 0; k < 8; ++k) {
        StableCube c = random_cube(*g, rng, 2, 3);
        const int axis = 1 + k % 2, end = (k / 2) % 2;
        auto b = box_of(c, axis, end);
        auto r = open_box_filler_search(*g, 2, axis, end, b, 8);
        REQUIRE(r.found);
        for (auto const& [key, f] : b) CHECK(face(r.filler, key.first, key.second) == f);
      }
  }
  SECTION("bad boxes are rejected") {
    BoxFaces b{{{1, 1}, walk_cube({0, 1})}, {{2, 0}, walk_cube({2, 3})}, {{2, 1}, walk_cube({0, 1})}};
    CHECK_THROWS_AS(open_box_filler_search(c4, 2, 1, 0, b, 4), PreconditionError);
    b.erase({2, 1});
    CHECK_THROWS_AS(open_box_filler_search(c4, 2, 1, 0, b, 4), InputError);
  }
  SECTION("exhaustion reports the window") {
    // a walk of length 3 does not fit a window of 2
    BoxFaces b{{{1, 0}, walk_cube({0})}, {{2, 0}, walk_cube({0, 1, 2, 3})}, {{1, 1}, walk_cube({3})}};
    auto r = open_box_filler_search(c5, 2, 2, 1, b, 2);
    CHECK_FALSE(r.found);
    CHECK(r.window == 2);
  }
}

TEST_CASE("A1 presentations", "[dht][a1]") {
  auto t = a1_presentation(tree6(), 0);
  CHECK(t.group.generators.empty());
  CHECK(abelianization_rank(t.group) == std::pair<int, std::vector<long long>>{0, {}});
  auto c4 = a1_presentation(cycle_graph(4), 0);
  CHECK(c4.group.generators.size() == 1);
  CHECK(c4.group.relators.size() == 1);
  CHECK(abelianization_rank(c4.group).first == 0);
  CHECK(abelianization_rank(a1_presentation(cycle_graph(3), 0).group).first == 0);
  auto c5 = a1_presentation(cycle_graph(5), 0);
  CHECK(c5.group.generators.size() == 1);
  CHECK(c5.group.relators.empty());
  for (int m = 5; m <= 8; ++m)
    CHECK(abelianization_rank(a1_presentation(cycle_graph(m), 0).group) == std::pair<int, std::vector<long long>>{1, {}});
  Graph two({"a", "b"});
  CHECK_THROWS_AS(a1_presentation(two, 0), PreconditionError);
  // relators are freely reduced words in the generators
  auto k4 = a1_presentation(complete_graph(4), 0);
  for (auto const& r : k4.group.relators) CHECK(free_reduce(r) == r);
  CHECK(abelianization_rank(k4.group).first == 0);
}

TEST_CASE("Smith normal form", "[dht][a1]") {
  GroupPresentation free3{{"a", "b", "c"}, {}};
  CHECK(abelianization_rank(free3) == std::pair<int, std::vector<long long>>{3, {}});
  GroupPresentation z2{{"a"}, {{1, 1}}};
  CHECK(abelianization_rank(z2) == std::pair<int, std::vector<long long>>{0, {2}});
  // Z/2 x Z/3 = Z/6
  GroupPresentation z6{{"a", "b"}, {{1, 1}, {2, 2, 2}, {1, 2, -1, -2}}};
  CHECK(abelianization_rank(z6) == std::pair<int, std::vector<long long>>{0, {6}});
  // a^4 b^6, a^6 b^4: determinant 16 - 36 = -20, gcd of entries 2
  GroupPresentation m{{"a", "b"}, {{1, 1, 1, 1, 2, 2, 2, 2, 2, 2}, {1, 1, 1, 1, 1, 1, 2, 2, 2, 2}}};
  CHECK(abelianization_rank(m) == std::pair<int, std::vector<long long>>{0, {2, 10}});
  GroupPresentation commutator{{"a", "b"}, {{1, 2, -1, -2}}};
  CHECK(abelianization_rank(commutator) == std::pair<int, std::vector<long long>>{2, {}});
}

TEST_CASE("A1 loop oracle", "[dht][a1]") {
  auto c4 = a1_bfs_oracle(cycle_graph(4), 0, 8);
  CHECK(c4.classes() == 1);
  auto c5 = a1_bfs_oracle(cycle_graph(5), 0, 8);
  CHECK_FALSE(c5.contractible({0, 1, 2, 3, 4, 0}));
  CHECK(c5.contractible({0, 1, 2, 1, 0}));
  CHECK(c5.class_of({0, 1, 2, 3, 4, 0}) != c5.class_of({0, 4, 3, 2, 1, 0}));
  CHECK(a1_bfs_oracle(tree6(), 0, 8).classes() == 1);
  CHECK_THROWS_AS(a1_bfs_oracle(cycle_graph(5), 0, 11), BoundError);
  CHECK_THROWS_AS(a1_bfs_oracle(cycle_graph(9), 0, 4), BoundError);
  CHECK_THROWS_AS(c5.class_of({0, 2, 0}), InputError);
}

TEST_CASE("A1 presentation agrees with the loop oracle on small graphs", "[dht][a1][slow]") {
  const std::vector<std::size_t> known{1, 1, 2, 6, 21, 112};
  int graphs = 0, nontrivial = 0;
  for (int n = 1; n <= 6; ++n) {
    auto gs = connected_graphs(n);
    CHECK(gs.size() == known[n - 1]);
    for (auto const& g : gs) {
      ++graphs;
      auto p = a1_presentation(g, 0);
      auto ab = abelianization_rank(p.group);
      const bool trivial = ab.first == 0 && ab.second.empty();
      auto oracle = a1_bfs_oracle(g, 0, 8);
      INFO("graph with " << n << " vertices and edges " << graph_to_json(g).dump());
      CHECK((oracle.classes() == 1) == trivial);
      if (!trivial) ++nontrivial;
      for (std::size_t k = 0; k < p.generator_loops.size(); ++k) {
        auto const& loop = p.generator_loops[k];
        if (loop.size() > 9) continue;
        GroupPresentation killed = p.group;
        killed.relators.push_back({static_cast<int>(k) + 1});
        const bool infinite_order = abelianization_rank(killed).first < ab.first;
        if (infinite_order) CHECK_FALSE(oracle.contractible(loop));
        if (trivial) CHECK(oracle.contractible(loop));
      }
    }
  }
  CHECK(graphs == 143);
  CHECK(nontrivial > 0);
}

TEST_CASE("lazy path graphs", "[dht][lazy]") {
  Graph i0 = interval_graph(0);
  auto p0 = path_graph_lazy(i0);
  auto pt = path_code(LineMap{0, {0}});
  for (int slack = 0; slack <= 3; ++slack) CHECK(p0.neighbors(pt, slack)->size() == 1);
  CHECK(p0.ball(pt, 3, 2).size() == 1);

  Graph c5 = cycle_graph(5);
  auto pk = path_graph_lazy(c5);
  auto v = path_code(LineMap{2, {0, 0, 1, 2, 2}});
  CHECK(path_vertex(v).offset == 3);
  CHECK(path_vertex(v).walk == std::vector<int>{0, 1, 2});
  CHECK(pk.canonical(pk.canonical(v)) == pk.canonical(v));
  // a shift is a neighbour, a shift by two is not
  CHECK(pk.adjacent(v, path_code(LineMap{4, {0, 1, 2}})));
  CHECK_FALSE(pk.adjacent(v, path_code(LineMap{5, {0, 1, 2}})));
  auto ball = pk.ball(v, 2, 1);
  for (auto const& a : ball)
    for (auto const& b : *pk.neighbors(a, 1)) {
      CHECK(pk.adjacent(a, b));
      CHECK(pk.adjacent(b, a));
    }
  CHECK(pk.cached_probes() > 0);
}

TEST_CASE("lazy graphs collapse along identities", "[dht][lazy]") {
  Graph c5 = cycle_graph(5);
  GraphMorphism id{c5, c5, identity_map(c5)};
  auto pk = path_graph_lazy(c5);
  auto dm = double_mapping_path_lazy(id);
  auto pb = pullback_graph_lazy(id, id);
  std::vector<LineMap> probes{{0, {0}}, {0, {0, 1}}, {-1, {2, 1, 0, 4}}, {0, {3, 4}}};
  for (auto const& l : probes) {
    const int slack = 1;
    // P_id is the path graph with x read off the end
    std::set<LazyGraph::Vertex> from_dm, from_pk;
    for (auto const& u : *dm.neighbors(mapping_path_code(l.end(), l), slack)) {
      auto [x, p] = mapping_path_vertex(u);
      CHECK(x == p.end());
      from_dm.insert(path_code(p));
    }
    for (auto const& u : *pk.neighbors(path_code(l), slack)) from_pk.insert(u);
    CHECK(from_dm == from_pk);
    // the pullback of (id, id) at (x, l, l', y) is pairs of neighbours with a common start
    LineMap l2 = canonical(LineMap{0, {l.start()}});
    auto pv = pullback_code({l.end(), l2.end(), l, l2});
    std::set<LazyGraph::Vertex> from_pb, expected;
    for (auto const& u : *pb.graph.neighbors(pv, slack)) from_pb.insert(u);
    auto n1 = pk.neighbors(path_code(l), slack);
    auto n2 = pk.neighbors(path_code(l2), slack);
    for (auto const& a : *n1)
      for (auto const& b : *n2) {
        LineMap la = path_vertex(a), lb = path_vertex(b);
        if (la.start() == lb.start()) expected.insert(pullback_code({la.end(), lb.end(), la, lb}));
      }
    CHECK(from_pb == expected);
  }
}

TEST_CASE("pullback square commutes at probed vertices", "[dht][lazy]") {
  Graph c4 = cycle_graph(4), i0 = interval_graph(0);
  GraphMorphism f{c4, i0, GraphMap(4, 0)};
  GraphMorphism g{i0, i0, GraphMap{0}};
  auto pb = pullback_graph_lazy(f, g);
  auto start = pullback_code({2, 0, LineMap{0, {0}}, LineMap{0, {0}}});
  auto ball = pb.graph.ball(start, 2, 1);
  CHECK(ball.size() == 4);
  for (auto const& v : ball) {
    CHECK(pb.pi_1(v).start() == pb.pi_K(v));
    CHECK(pb.pi_1(v).end() == f.map[pb.pi_G(v)]);
    CHECK(pb.pi_2(v).start() == pb.pi_K(v));
    CHECK(pb.pi_2(v).end() == g.map[pb.pi_H(v)]);
  }
  // a cospan into C5 with real paths
  Graph c5 = cycle_graph(5);
  GraphMorphism a{i0, c5, GraphMap{0}}, b{i0, c5, GraphMap{2}};
  auto pab = pullback_graph_lazy(a, b);
  auto v = pullback_code({0, 0, LineMap{0, {1, 0}}, LineMap{0, {1, 2}}});
  for (auto const& u : pab.graph.ball(v, 2, 1)) {
    CHECK(pab.pi_1(u).end() == 0);
    CHECK(pab.pi_2(u).end() == 2);
    CHECK(pab.pi_1(u).start() == pab.pi_2(u).start());
  }
  CHECK_THROWS_AS(pab.graph.canonical(pullback_code({0, 0, LineMap{0, {1, 0}}, LineMap{0, {3, 2}}})), InputError);
}

TEST_CASE("lazy probes are safe to share between threads", "[dht][lazy]") {
  Graph c5 = cycle_graph(5);
  auto pk = path_graph_lazy(c5);
  auto v = path_code(LineMap{0, {0, 1, 2}});
  auto sequential = path_graph_lazy(c5).ball(v, 2, 1);
  std::vector<std::vector<LazyGraph::Vertex>> results(4);
  std::vector<std::thread> ts;
  for (int t = 0; t < 4; ++t) ts.emplace_back([&, t] { results[t] = pk.ball(v, 2, 1); });
  for (auto& t : ts) t.join();
  for (auto const& r : results) CHECK(r == sequential);
}

TEST_CASE("graph files", "[dht][io]") {
  json j = json::parse(R"({"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["c", "b"]]})");
  Graph g = graph_from_json(j);
  CHECK(g.num_edges() == 2);
  CHECK(graph_from_json(graph_to_json(g)) == g);
  auto fails_at = [](const char* text, const std::string& where) {
    try {
      graph_from_json(json::parse(text));
    } catch (const InputError& e) {
      return std::string(e.what()).rfind(where, 0) == 0;
    }
    return false;
  };
  CHECK(fails_at(R"({"vertices": ["a"], "edges": [["a", "a"]]})", "/edges/0"));
  CHECK(fails_at(R"({"vertices": ["a", "b"], "edges": [["a", "b"], ["b", "a"]]})", "/edges/1"));
  CHECK(fails_at(R"({"vertices": ["a", "b"], "edges": [["a", "z"]]})", "/edges/0/1"));
  CHECK(fails_at(R"({"vertices": ["a", "a"], "edges": []})", "/vertices/1"));
  CHECK(fails_at(R"({"edges": []})", "/vertices"));
}

TEST_CASE("graph corpus expectations", "[dht][corpus]") {
  auto files = test::corpus_files("graphs");
  CHECK(files.size() >= 8);
  for (auto const& p : files) {
    json j = read_json_file(p.string());
    Graph g = graph_from_json(j.at("graph"), "/graph");
    const json& e = j.at("expect");
    int base = g.find(e.at("base").get<std::string>());
    auto pres = a1_presentation(g, base);
    auto ab = abelianization_rank(pres.group);
    INFO(p.filename().string());
    CHECK(ab.first == e.at("a1_rank").get<int>());
    CHECK(ab.second == e.at("a1_torsion").get<std::vector<long long>>());
    if (g.size() <= 8) CHECK((a1_bfs_oracle(g, base, 8).classes() == 1) == (ab.first == 0 && ab.second.empty()));
  }
}
