#include <doctest.h>

#include <numeric>
#include <random>

#include "oracles/oracles.hpp"
#include "support.hpp"
#include "votenet/community.hpp"
#include "votenet/synth.hpp"

using namespace votenet;
using testing::graph;

namespace {

SimilarityGraph two_triangles() {
  return graph({{"a", "b", 1}, {"b", "c", 1}, {"a", "c", 1}, {"d", "e", 1}, {"e", "f", 1}, {"d", "f", 1}});
}

oracle::Matrix adjacency(const SimilarityGraph& g) {
  oracle::Matrix a(g.node_count(), std::vector<double>(g.node_count(), 0.0));
  for (const auto& e : g.edges()) a[e.a][e.b] = a[e.b][e.a] = e.weight;
  return a;
}

std::vector<int> as_int(const std::vector<std::uint32_t>& v) { return {v.begin(), v.end()}; }

// Same-community relation as a canonical set of pairs, to compare partitions
// up to relabeling.
std::set<std::pair<std::string, std::string>> co_membership(const Partition& p) {
  std::set<std::pair<std::string, std::string>> out;
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    for (std::size_t j = 0; j < p.members.size(); ++j) {
      if (i != j && p.community[i] == p.community[j]) out.emplace(p.members[i], p.members[j]);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("community") {

TEST_CASE("modularity_score: single community is 0") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 10; ++t) {
    const auto g = testing::random_graph(rng, 9, 0.5);
    if (g.edge_count() == 0) continue;
    const std::vector<std::uint32_t> one(g.node_count(), 0);
    CHECK(modularity_score(g, one) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("modularity_score: two disjoint triangles split by triangle is 0.5") {
  const auto g = two_triangles();
  std::vector<std::uint32_t> c(6);
  for (std::size_t i = 0; i < 6; ++i) c[i] = g.nodes()[i].id < "d" ? 0 : 1;
  CHECK(modularity_score(g, c) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(oracle::best_modularity(adjacency(g)) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("modularity_score: singletons give -sum k^2/(2W)^2") {
  const auto g = graph({{"a", "b", 0.5}, {"b", "c", 0.25}, {"c", "d", 1.0}});
  std::vector<std::uint32_t> c(4);
  std::iota(c.begin(), c.end(), 0);
  // k = 0.5, 0.75, 1.25, 1.0 and 2W = 3.5
  const double expected = -(0.25 + 0.5625 + 1.5625 + 1.0) / (3.5 * 3.5);
  CHECK(modularity_score(g, c) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(modularity_score(g, c) < 0.0);
}

TEST_CASE("modularity_score matches the raw double-sum formula") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 30; ++t) {
    const auto g = testing::random_graph(rng, 10, 0.4);
    if (g.edge_count() == 0) continue;
    std::vector<std::uint32_t> c(g.node_count());
    for (auto& x : c) x = rng() % 4;
    CHECK(std::abs(modularity_score(g, c) - oracle::modularity(adjacency(g), as_int(c))) < 1e-12);
  }
}

TEST_CASE("modularity_score rejects partial assignments") {
  const auto g = two_triangles();
  const std::vector<std::uint32_t> short_assignment(3, 0);
  CHECK_THROWS_AS(modularity_score(g, short_assignment), std::invalid_argument);
  Partition p;
  p.members = {"a", "b"};
  p.community = {0, 0};
  CHECK_THROWS_AS(modularity_score(g, p), std::invalid_argument);
}

TEST_CASE("louvain: two disjoint triangles") {
  const auto p = louvain(two_triangles(), 0);
  CHECK(p.community_count == 2);
  CHECK(p.modularity == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("louvain: uniform complete graph stays one community") {
  std::vector<std::tuple<std::string, std::string, double>> edges;
  for (int i = 0; i < 8; ++i) {
    for (int j = i + 1; j < 8; ++j) edges.emplace_back(std::to_string(i), std::to_string(j), 0.7);
  }
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto p = louvain(graph(edges), seed);
    CHECK(p.community_count == 1);
    CHECK(p.modularity == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("louvain: partition invariants") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto g = testing::random_graph(rng, 40, 0.15);
    if (g.edge_count() == 0) continue;
    const auto p = louvain(g, t);
    REQUIRE(p.members.size() == g.node_count());
    const auto sizes = p.community_sizes();
    CHECK(sizes.size() == p.community_count);
    for (std::size_t i = 1; i < sizes.size(); ++i) CHECK(sizes[i - 1] >= sizes[i]);
    for (const auto c : p.community) CHECK(c < p.community_count);
    CHECK(std::abs(p.modularity - modularity_score(g, p)) < 1e-9);
    std::vector<std::uint32_t> singletons(g.node_count());
    std::iota(singletons.begin(), singletons.end(), 0);
    CHECK(p.modularity >= modularity_score(g, singletons));
    CHECK(p.modularity >= 0.0);
  }
}

TEST_CASE("oracle: louvain best-of-8 reaches 95% of the brute-force optimum") {
  std::mt19937_64 rng(4);
  int checked = 0;
  while (checked < 20) {
    const auto g = testing::random_graph(rng, 5 + rng() % 4, 0.45);
    if (g.edge_count() == 0) continue;
    const double best = oracle::best_modularity(adjacency(g));
    const auto p = louvain_best_of(g, 0, 8);
    CHECK(p.modularity >= 0.95 * best - 1e-12);
    CHECK(p.modularity <= best + 1e-12);
    ++checked;
  }
}

TEST_CASE("property: louvain is deterministic for a fixed seed") {
  std::mt19937_64 rng(5);
  const auto g = testing::random_graph(rng, 60, 0.1);
  for (std::uint64_t seed : {0ull, 7ull, 123ull}) {
    const auto a = louvain(g, seed);
    const auto b = louvain(g, seed);
    CHECK(a.community == b.community);
    CHECK(a.modularity == b.modularity);
  }
  CHECK(louvain_best_of(g, 3, 4).community == louvain_best_of(g, 3, 4).community);
}

TEST_CASE("property: scaling weights leaves Q and the partition unchanged") {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 5; ++t) {
    const auto g = testing::random_graph(rng, 30, 0.2);
    std::vector<Node> nodes(g.nodes().begin(), g.nodes().end());
    std::vector<Edge> scaled(g.edges().begin(), g.edges().end());
    for (auto& e : scaled) e.weight *= 0.5;
    const SimilarityGraph h("s", nodes, scaled);
    const auto a = louvain(g, 9);
    const auto b = louvain(h, 9);
    CHECK(a.community == b.community);
    CHECK(a.modularity == doctest::Approx(b.modularity).epsilon(1e-12));
  }
}

TEST_CASE("property: renaming node ids keeps the partition") {
  std::mt19937_64 rng(7);
  const auto g = testing::random_graph(rng, 30, 0.2);
  std::vector<Node> renamed(g.nodes().begin(), g.nodes().end());
  for (auto& n : renamed) n.id = "renamed_" + n.id;
  const SimilarityGraph h("r", renamed, std::vector<Edge>(g.edges().begin(), g.edges().end()));
  const auto a = louvain(g, 2);
  const auto b = louvain(h, 2);
  CHECK(a.community == b.community);
  CHECK(a.modularity == b.modularity);
}

TEST_CASE("louvain_best_of never does worse than its first restart") {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 10; ++t) {
    const auto g = testing::random_graph(rng, 40, 0.1);
    if (g.edge_count() == 0) continue;
    CHECK(louvain_best_of(g, 0, 6).modularity >= louvain(g, 0).modularity);
  }
}

TEST_CASE("community_assignment: one group per community") {
  const auto p = louvain(two_triangles(), 0);
  const auto a = community_assignment(p);
  CHECK(a.size() == 6);
  std::set<std::string> groups;
  for (const auto& [_, g] : a) groups.insert(g);
  CHECK(groups.size() == 2);
  CHECK(a.at("a") == a.at("b"));
  CHECK(a.at("a") != a.at("d"));
}

TEST_CASE("community PD is at least the PD of the planted blocs") {
  synth::BlocModel model;
  model.members = 60;
  model.sessions = 60;
  model.parties_per_bloc = 3;
  model.loyalty = 0.9;
  const auto w = synth::generate(model);
  const auto& d = w.dataset;
  const auto g = percentile_filter(build_graph(d), 55);
  const auto p = louvain_best_of(g, 0, 4);
  CHECK(p.community_count == 2);
  GroupAssignment blocs;
  for (const auto& [m, b] : w.bloc_of) blocs[m] = std::to_string(b);
  const auto by_party = group_discipline(d, blocs);
  const auto by_community = group_discipline(d, community_assignment(p));
  CHECK(*by_community.average_group_discipline() >= *by_party.average_group_discipline() - 1e-12);
}

TEST_CASE("graph without edges yields singletons") {
  const auto p = louvain(graph({}, {"a", "b", "c"}), 0);
  CHECK(p.community_count == 3);
  CHECK(p.modularity == 0.0);
}

TEST_CASE("same-community relation survives relabeling through align_partition") {
  const auto g = two_triangles();
  const auto p = louvain(g, 1);
  CHECK(co_membership(align_partition(g, p)) == co_membership(p));
}

}  // TEST_SUITE
