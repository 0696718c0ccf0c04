#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "support.hpp"
#include "votenet/tiestrength.hpp"

using namespace votenet;
using testing::graph;

namespace {

SimilarityGraph complete(int n) {
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.emplace_back("k" + std::to_string(i), "k" + std::to_string(j), 0.9);
  }
  return graph(edges);
}

std::set<std::size_t> strong_edges(const TieClassification& t) {
  std::set<std::size_t> out;
  for (std::size_t i = 0; i < t.label.size(); ++i) {
    if (t.label[i] == TieLabel::Strong) out.insert(i);
  }
  return out;
}

}  // namespace

TEST_SUITE("tiestrength") {

TEST_CASE("overlap: triangle, path, 4-cycle and chord") {
  const auto k3 = graph({{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}});
  for (std::size_t e = 0; e < 3; ++e) CHECK(neighborhood_overlap(k3, e) == 1.0);

  const auto path = graph({{"a", "b", 1}, {"b", "c", 1}});
  CHECK(neighborhood_overlap(path, "a", "b") == 0.0);
  CHECK(neighborhood_overlap(path, "b", "c") == 0.0);

  const auto c4 = graph({{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}, {"d", "a", 1}});
  CHECK(neighborhood_overlap(c4, "a", "b") == 0.0);
  const auto chord = graph({{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}, {"d", "a", 1}, {"a", "c", 1}});
  CHECK(neighborhood_overlap(chord, "a", "b") == 0.5);
}

TEST_CASE("overlap: isolated pair is 0 and a missing edge is an error") {
  const auto g = graph({{"a", "b", 1}, {"c", "d", 1}});
  CHECK(neighborhood_overlap(g, "a", "b") == 0.0);
  CHECK_THROWS_AS(neighborhood_overlap(g, "a", "c"), std::invalid_argument);
}

TEST_CASE("property: overlap is symmetric and within [0,1]") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto g = testing::random_graph(rng, 25, 0.25);
    const auto all = edge_overlaps(g);
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      const auto& edge = g.edges()[e];
      const auto& a = g.nodes()[edge.a].id;
      const auto& b = g.nodes()[edge.b].id;
      CHECK(all[e] >= 0.0);
      CHECK(all[e] <= 1.0);
      CHECK(neighborhood_overlap(g, a, b) == neighborhood_overlap(g, b, a));
      CHECK(neighborhood_overlap(g, e) == all[e]);
    }
  }
}

TEST_CASE("property: every edge of a complete graph has overlap 1") {
  for (int n = 3; n <= 10; ++n) {
    const auto g = complete(n);
    for (const double o : edge_overlaps(g)) CHECK(o == 1.0);
  }
}

TEST_CASE("classify_ties: thresholds 0 and 1") {
  std::mt19937_64 rng(2);
  const auto g = testing::random_graph(rng, 20, 0.3);
  const auto all = classify_ties(g, 0.0);
  CHECK(strong_edges(all).size() == g.edge_count());
  const auto path = graph({{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"c", "d", 1}});
  const auto top = classify_ties(path, 1.0);
  CHECK(strong_edges(top).size() < path.edge_count());
  const auto k4 = complete(4);
  for (double t : {0.0, 0.3, 0.99, 1.0}) CHECK(strong_edges(classify_ties(k4, t)).size() == 6);
  CHECK_THROWS_AS(classify_ties(g, 1.5), std::invalid_argument);
}

TEST_CASE("classify_ties: overlap exactly at the threshold is strong") {
  const auto chord = graph({{"a", "b", 1}, {"b", "c", 1}, {"c", "d", 1}, {"d", "a", 1}, {"a", "c", 1}});
  const auto t = classify_ties(chord, 0.5);
  const auto e = *chord.find_edge(*chord.node_index("a"), *chord.node_index("b"));
  CHECK(t.label[e] == TieLabel::Strong);
}

TEST_CASE("strong_tie_subgraph: identity and annihilation") {
  std::mt19937_64 rng(3);
  const auto g = testing::random_graph(rng, 20, 0.3);
  const auto same = strong_tie_subgraph(g, classify_ties(g, 0.0));
  CHECK(same.edge_count() == g.edge_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const auto& a = g.edges()[i];
    const auto e = same.find_edge(*same.node_index(g.nodes()[a.a].id), *same.node_index(g.nodes()[a.b].id));
    REQUIRE(e.has_value());
    CHECK(same.edges()[*e].weight == a.weight);
    CHECK(same.edges()[*e].co_attendance == a.co_attendance);
  }
  TieClassification none = classify_ties(g, 0.0);
  std::fill(none.label.begin(), none.label.end(), TieLabel::Weak);
  const auto empty = strong_tie_subgraph(g, none);
  CHECK(empty.edge_count() == 0);
  CHECK(empty.node_count() == 0);
}

TEST_CASE("strong_tie_subgraph prunes nodes left isolated") {
  // Two triangles joined by a bridge c-d; the bridge has overlap 0.
  const auto g = graph({{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"c", "d", 1},
                        {"d", "e", 1}, {"e", "f", 1}, {"d", "f", 1}, {"f", "z", 1}});
  const auto s = strong_tie_subgraph(g, classify_ties(g, 0.1));
  CHECK_FALSE(s.find_edge(*s.node_index("c"), *s.node_index("d")).has_value());
  CHECK_FALSE(s.node_index("z").has_value());
  CHECK(s.node_count() == 6);
}

TEST_CASE("monotonicity: strong edges at a higher threshold are a subset") {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 20; ++trial) {
    const auto g = testing::random_graph(rng, 30, 0.25);
    std::set<std::size_t> previous = strong_edges(classify_ties(g, 0.0));
    for (int k = 1; k <= 20; ++k) {
      const auto current = strong_edges(classify_ties(g, k / 20.0));
      CHECK(std::includes(previous.begin(), previous.end(), current.begin(), current.end()));
      previous = current;
    }
  }
}

TEST_CASE("threshold_sweep: single zero threshold keeps everyone") {
  std::mt19937_64 rng(5);
  const auto g = testing::random_graph(rng, 30, 0.3);
  const std::vector<double> t{0.0};
  const auto curve = threshold_sweep(g, t, 0);
  REQUIRE(curve.points.size() == 1);
  CHECK(curve.points[0].retained_members == g.node_count());
  CHECK(curve.base_members == g.node_count());
}

TEST_CASE("property: retained members never increase along the sweep") {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 5; ++trial) {
    const auto g = testing::random_graph(rng, 40, 0.2);
    const auto thresholds = parse_sweep_range("0:1:0.05");
    const auto curve = threshold_sweep(g, thresholds, 0);
    REQUIRE(curve.points.size() == thresholds.size());
    for (std::size_t i = 1; i < curve.points.size(); ++i) {
      CHECK(curve.points[i].threshold > curve.points[i - 1].threshold);
      CHECK(curve.points[i].retained_members <= curve.points[i - 1].retained_members);
    }
  }
}

TEST_CASE("threshold_sweep is deterministic") {
  std::mt19937_64 rng(7);
  const auto g = testing::random_graph(rng, 40, 0.2);
  const auto t = parse_sweep_range("0:0.6:0.1");
  const auto a = threshold_sweep(g, t, 3, 2);
  const auto b = threshold_sweep(g, t, 3, 2);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].modularity == b.points[i].modularity);
    CHECK(a.points[i].communities == b.points[i].communities);
  }
}

TEST_CASE("select_threshold: rule application") {
  SweepCurve single{10, {{0.3, 0.2, 8, 2}}};
  CHECK(select_threshold(single) == 0.3);

  SweepCurve c{100, {{0.2, 0.3, 100, 2}, {0.5, 0.6, 60, 3}, {0.8, 0.7, 20, 4}}};
  CHECK(select_threshold(c, 0.5) == 0.5);

  SweepCurve tie{100, {{0.1, 0.4, 90, 2}, {0.2, 0.4, 80, 2}}};
  CHECK(select_threshold(tie) == 0.1);

  SweepCurve sparse{100, {{0.4, 0.5, 30, 2}, {0.6, 0.7, 10, 2}}};
  CHECK_THROWS_AS(select_threshold(sparse, 0.5), std::runtime_error);
}

TEST_CASE("parse_sweep_range") {
  const auto t = parse_sweep_range("0:1:0.05");
  CHECK(t.size() == 21);
  CHECK(t.front() == 0.0);
  CHECK(t.back() == 1.0);
  CHECK(t[3] == 0.15);
  CHECK(parse_sweep_range("0.4:0.55:0.05").size() == 4);
  CHECK_THROWS_AS(parse_sweep_range("0:1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep_range("0.5:0.2:0.1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_sweep_range("0:1:0"), std::invalid_argument);
}

}  // TEST_SUITE
