#include <doctest.h>

#include <random>
#include <sstream>

#include "support.hpp"
#include "votenet/community.hpp"
#include "votenet/formats.hpp"
#include "votenet/synth.hpp"

using namespace votenet;
namespace fmt = votenet::formats;

TEST_SUITE("formats") {

TEST_CASE("graph files round-trip exactly") {
  synth::BlocModel model;
  model.members = 20;
  model.sessions = 17;
  model.attendance = 0.9;
  model.window_label = "2011";
  const auto g = build_graph(synth::generate(model).dataset);
  std::stringstream edges, nodes;
  fmt::write_edges(edges, g);
  fmt::write_nodes(nodes, g);
  const auto back = fmt::read_graph(edges, nodes);
  CHECK(back.window_label() == "2011");
  REQUIRE(back.edge_count() == g.edge_count());
  REQUIRE(back.node_count() == g.node_count());
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    CHECK(back.edges()[i].weight == g.edges()[i].weight);
    CHECK(back.edges()[i].co_attendance == g.edges()[i].co_attendance);
  }
  for (std::size_t i = 0; i < g.node_count(); ++i) CHECK(back.nodes()[i].party == g.nodes()[i].party);
}

TEST_CASE("edge file lines carry member ids, weight and co-attendance") {
  const auto g = testing::graph({{"a", "b", 0.75}});
  std::stringstream edges;
  fmt::write_edges(edges, g);
  CHECK(edges.str().find("a\tb\t0.75\t1\n") != std::string::npos);
}

TEST_CASE("partition files round-trip") {
  std::mt19937_64 rng(1);
  const auto g = testing::random_graph(rng, 25, 0.2);
  const auto p = louvain(g, 0);
  std::stringstream ss;
  fmt::write_partition(ss, p, "2003");
  const auto back = fmt::read_partition(ss);
  CHECK(back.window_label == "2003");
  CHECK(back.partition.members == p.members);
  CHECK(back.partition.community == p.community);
  CHECK(back.partition.modularity == p.modularity);
  CHECK(back.partition.community_count == p.community_count);
}

TEST_CASE("stats files round-trip") {
  GraphStats s{342, 9329, 1, 1.8412, 54.55, 0.7123, 0.69, 0.16};
  std::stringstream ss;
  fmt::write_stats(ss, s);
  const auto back = fmt::read_stats(ss);
  CHECK(back.node_count == 342);
  CHECK(back.edge_count == 9329);
  CHECK(back.avg_shortest_path == s.avg_shortest_path);
  CHECK(back.clustering_coefficient == s.clustering_coefficient);
  CHECK(back.avg_local_clustering == s.avg_local_clustering);
  CHECK(back.density == s.density);
}

TEST_CASE("discipline files round-trip, including undefined members") {
  const auto d = testing::dataset(
      "s1\ta\tP\tYES\ns1\tb\tP\tNO\ns1\tc\tQ\tYES\n"
      "s2\ta\tP\tYES\ns2\tb\tP\tYES\ns2\tc\tQ\tNO\ns2\td\tQ\tNO\ns2\te\tQ\tNO\n");
  const auto r = group_discipline(d, party_assignment(d));
  std::stringstream ss;
  fmt::write_discipline(ss, r);
  const auto back = fmt::read_discipline(ss);
  CHECK(back.per_member == r.per_member);
  CHECK(back.undefined_members == r.undefined_members);
  CHECK(back.per_group.size() == r.per_group.size());
  for (const auto& [g, v] : r.per_group) {
    CHECK(back.per_group.at(g).mean == v.mean);
    CHECK(back.per_group.at(g).sd == v.sd);
    CHECK(back.per_group.at(g).members == v.members);
  }
  CHECK(back.average_group_discipline() == r.average_group_discipline());
}

TEST_CASE("sweep files round-trip") {
  SweepCurve c{100, {{0.0, 0.4, 100, 2}, {0.05, 0.41, 97, 3}}};
  std::stringstream ss;
  fmt::write_sweep(ss, c, 0.05);
  const auto back = fmt::read_sweep(ss);
  CHECK(back.selected == 0.05);
  CHECK(back.curve.base_members == 100);
  REQUIRE(back.curve.points.size() == 2);
  CHECK(back.curve.points[1].modularity == 0.41);
  CHECK(back.curve.points[1].retained_members == 97);
}

TEST_CASE("temporal files round-trip with undefined values") {
  const std::vector<fmt::TemporalRow> rows{{"2016", "2017", 0.5747, 0.58},
                                           {"2017", "2018", std::nullopt, std::nullopt}};
  std::stringstream ss;
  fmt::write_temporal(ss, rows);
  CHECK(ss.str().find("NA") != std::string::npos);
  const auto back = fmt::read_temporal(ss);
  REQUIRE(back.size() == 2);
  CHECK(back[0].persistence == 0.5747);
  CHECK(back[0].nmi == 0.58);
  CHECK_FALSE(back[1].persistence.has_value());
}

TEST_CASE("flow files: five columns, churn rows only on request") {
  FlowTable t;
  t.earlier_label = "x";
  t.later_label = "y";
  t.rows = {{0, 0, 3}, {0, 1, 1}};
  t.exited_count = 2;
  t.exited_by_community = {{0, 2}};
  t.entered_count = 1;
  t.entered_by_community = {{1, 1}};
  std::stringstream plain, churn;
  fmt::write_flow(plain, t);
  fmt::write_flow(churn, t, true);
  CHECK(plain.str() == "x\t0\ty\t0\t3\nx\t0\ty\t1\t1\n");
  CHECK(churn.str().find("x\t0\ty\tEXITED\t2\n") != std::string::npos);
  CHECK(churn.str().find("x\tENTERED\ty\t1\t1\n") != std::string::npos);
}

TEST_CASE("DOT and GEXF exports name every node") {
  const auto g = testing::graph({{"a", "b", 0.5}, {"b", "c", 0.25}});
  std::stringstream dot, gexf;
  fmt::write_dot(dot, g);
  fmt::write_gexf(gexf, g);
  CHECK(dot.str().find("graph") != std::string::npos);
  for (const char* id : {"\"a\"", "\"b\"", "\"c\""}) {
    CHECK(dot.str().find(id) != std::string::npos);
    CHECK(gexf.str().find(id) != std::string::npos);
  }
  CHECK(gexf.str().find("<gexf") != std::string::npos);
}

TEST_CASE("malformed files raise FormatError") {
  std::stringstream bad("member\tonly_two\n");
  CHECK_THROWS_AS(fmt::read_partition(bad), fmt::FormatError);
  std::stringstream edges("a\tb\tnot_a_number\t3\n"), nodes("a\tP\nb\tP\n");
  CHECK_THROWS_AS(fmt::read_graph(edges, nodes), fmt::FormatError);
}

}  // TEST_SUITE
