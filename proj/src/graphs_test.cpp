#include "ksw/graphs.hpp"

#include "support/generators.hpp"

#include <doctest.h>

#include <set>

using namespace ksw;
using ksw::testing::make_rng;

namespace {

WeightedDigraph make(std::vector<std::string> labels, std::vector<std::tuple<int, int, int>> es) {
  std::vector<Edge> edges;
  for (auto [s, d, w] : es) edges.push_back({std::size_t(s), std::size_t(d), Rational(w), std::nullopt});
  return WeightedDigraph(std::move(labels), std::move(edges));
}

// Vertices 1..4 at indices 0..3.
WeightedDigraph fig2_left() { return make({"1", "2", "3", "4"}, {{0, 1, 1}, {1, 3, 1}, {3, 2, 1}, {2, 0, 1}, {0, 3, 1}}); }
WeightedDigraph fig2_right() { return make({"1", "2", "3", "4"}, {{0, 1, 1}, {1, 3, 1}, {2, 3, 1}, {0, 2, 1}, {0, 3, 1}}); }

// Independent all-pairs oracle.
std::vector<std::vector<std::optional<Rational>>> floyd(const WeightedDigraph& g) {
  std::size_t n = g.num_vertices();
  std::vector<std::vector<std::optional<Rational>>> d(n, std::vector<std::optional<Rational>>(n));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = Rational(0);
  for (const auto& e : g.edges()) {
    if (!d[e.src][e.dst] || e.weight < *d[e.src][e.dst]) d[e.src][e.dst] = d[e.dst][e.src] = e.weight;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] && d[k][j] && (!d[i][j] || *d[i][k] + *d[k][j] < *d[i][j])) d[i][j] = *d[i][k] + *d[k][j];
  return d;
}

}  // namespace

TEST_CASE("construction rejects malformed graphs") {
  CHECK_THROWS_AS(make({"a", "b"}, {{0, 0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(make({"a", "b"}, {{0, 1, 1}, {1, 0, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(make({"a", "b"}, {{0, 1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(make({"a", "a"}, {}), std::invalid_argument);
  CHECK_THROWS_AS(make({"a"}, {}).index_of("z"), std::invalid_argument);
}

TEST_CASE("geodesic distance examples") {
  auto single = make({"x", "y"}, {{0, 1, 3}});
  CHECK(*geodesic_distance(single, 0, 1) == 3);
  auto path = make({"1", "2", "3"}, {{0, 1, 1}, {2, 1, 2}});
  CHECK(*geodesic_distance(path, 0, 2) == 3);
  CHECK(*geodesic_distance(path, 2, 2) == 0);
  auto split = make({"1", "2", "3"}, {{0, 1, 1}});
  CHECK_FALSE(geodesic_distance(split, 0, 2));
  CHECK_THROWS_AS(geodesic_distance(split, 0, 7), std::invalid_argument);
}

TEST_CASE("geodesic distance is a metric matching an all-pairs oracle") {
  auto rng = make_rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = ksw::testing::random_graph(rng, 10, 20, trial % 2 == 0);
    auto oracle = floyd(g);
    std::size_t n = g.num_vertices();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        auto d = geodesic_distance(g, i, j);
        CHECK(d.has_value() == oracle[i][j].has_value());
        if (d) CHECK(*d == *oracle[i][j]);
        CHECK(d == geodesic_distance(g, j, i));
        for (std::size_t k = 0; k < n; ++k) {
          auto a = geodesic_distance(g, i, k), b = geodesic_distance(g, k, j);
          if (a && b) CHECK(*d <= *a + *b);
        }
      }
  }
}

TEST_CASE("acyclicity witnesses for the two orientations of the four-vertex graph") {
  auto left = acyclicity_witness(fig2_left());
  CHECK_FALSE(left.acyclic);
  CHECK(left.sequence == std::vector<std::size_t>{0, 3, 2, 0});
  auto right = acyclicity_witness(fig2_right());
  CHECK(right.acyclic);
  CHECK(right.sequence == std::vector<std::size_t>{0, 1, 2, 3});
  auto single = acyclicity_witness(make({"p", "q"}, {{1, 0, 1}}));
  CHECK(single.acyclic);
  CHECK(single.sequence == std::vector<std::size_t>{1, 0});
}

TEST_CASE("acyclicity witnesses verify on random orientations") {
  auto rng = make_rng(22);
  for (int trial = 0; trial < 60; ++trial) {
    auto g = ksw::testing::random_graph(rng, 8, 14, trial % 3 != 0);
    auto w = acyclicity_witness(g);
    if (w.acyclic) {
      REQUIRE(w.sequence.size() == g.num_vertices());
      std::vector<std::size_t> pos(g.num_vertices());
      for (std::size_t k = 0; k < w.sequence.size(); ++k) pos[w.sequence[k]] = k;
      for (const auto& e : g.edges()) CHECK(pos[e.src] < pos[e.dst]);
    } else {
      REQUIRE(w.sequence.size() >= 3);
      CHECK(w.sequence.front() == w.sequence.back());
      for (std::size_t k = 0; k + 1 < w.sequence.size(); ++k) {
        auto e = g.edge_between(w.sequence[k], w.sequence[k + 1]);
        REQUIRE(e);
        CHECK(g.edge(*e).src == w.sequence[k]);
      }
    }
  }
}

TEST_CASE("fundamental cycles") {
  auto tree = make({"a", "b", "c", "d"}, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}});
  CHECK(fundamental_cycles(tree).empty());
  auto tri = make({"a", "b", "c"}, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}});
  CHECK(fundamental_cycles(tri).size() == 1);
  CHECK(fundamental_cycles(fig2_left()).size() == 2);

  auto rng = make_rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    auto g = ksw::testing::random_graph(rng, 9, 16, trial % 2 == 0);
    auto comps = connected_components(g);
    std::size_t ncomp = std::set<std::size_t>(comps.begin(), comps.end()).size();
    auto cycles = fundamental_cycles(g);
    CHECK(cycles.size() == g.num_edges() - g.num_vertices() + ncomp);
    std::set<std::size_t> non_tree;
    for (const auto& c : cycles) {
      REQUIRE(c.size() >= 4);
      CHECK(c.front() == c.back());
      for (std::size_t k = 0; k + 1 < c.size(); ++k) CHECK(g.edge_between(c[k], c[k + 1]).has_value());
      non_tree.insert(*g.edge_between(c[0], c[1]));
    }
    CHECK(non_tree.size() == cycles.size());
  }
}

TEST_CASE("split graph") {
  auto fig1 = fig2_left();
  auto s = split_graph(fig1);
  CHECK(s.size() == 10);
  CHECK(s[0] == SplitEntry{0, -1});
  CHECK(s[1] == SplitEntry{0, +1});
  CHECK(split_graph(make({"a"}, {})).empty());
}

TEST_CASE("tree paths") {
  auto g = make({"a", "b", "c", "d"}, {{0, 1, 1}, {1, 2, 1}, {1, 3, 1}});
  auto f = spanning_forest(g);
  CHECK(tree_path(g, f, 2, 3) == std::vector<std::size_t>{2, 1, 3});
  CHECK(tree_path(g, f, 0, 0) == std::vector<std::size_t>{0});
}
