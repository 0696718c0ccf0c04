#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/oracles.hpp"
#include "votenet/temporal.hpp"

using namespace votenet;

namespace {

WindowPartition window(std::string label, std::map<std::string, std::uint32_t> c) {
  return {std::move(label), std::move(c)};
}

std::vector<int> labels_over(const WindowPartition& w, const std::vector<std::string>& members) {
  std::vector<int> out;
  for (const auto& m : members) out.push_back(static_cast<int>(w.community.at(m)));
  return out;
}

}  // namespace

TEST_SUITE("temporal") {

TEST_CASE("persistence: bounds and partial overlap") {
  const auto a = window("x", {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
  const auto b = window("y", {{"a", 1}, {"b", 0}, {"e", 0}});
  const auto z = window("z", {{"p", 0}, {"q", 1}});
  CHECK(persistence({a, a}) == 1.0);
  CHECK(persistence({a, z}) == 0.0);
  CHECK(persistence({a, b}) == 0.5);
  const auto empty = window("e", {});
  CHECK_THROWS_AS(persistence({empty, a}), std::invalid_argument);
}

TEST_CASE("nmi: identical partitions give 1") {
  const auto a = window("x", {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}, {"e", 2}});
  CHECK(nmi({a, a}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("nmi: independent partitions give 0") {
  const auto x = window("x", {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
  const auto y = window("y", {{"a", 0}, {"c", 0}, {"b", 1}, {"d", 1}});
  CHECK(std::abs(nmi({x, y})) < 1e-12);
}

TEST_CASE("nmi: uneven split matches the mutual-information oracle") {
  const auto x = window("x", {{"a", 0}, {"b", 0}, {"c", 0}, {"d", 1}, {"e", 1}});
  const auto y = window("y", {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}, {"e", 1}});
  const std::vector<std::string> m{"a", "b", "c", "d", "e"};
  const double expected = oracle::nmi(labels_over(x, m), labels_over(y, m));
  CHECK(std::abs(nmi({x, y}) - expected) < 1e-9);
  CHECK(expected > 0.0);
  CHECK(expected < 1.0);
}

TEST_CASE("nmi: restricted to common members") {
  const auto x = window("x", {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}, {"gone", 1}});
  const auto y = window("y", {{"a", 5}, {"b", 5}, {"c", 2}, {"d", 2}, {"new", 2}});
  CHECK(nmi({x, y}) == doctest::Approx(1.0).epsilon(1e-12));
  const auto z = window("z", {{"q", 0}});
  CHECK_THROWS_AS(nmi({x, z}), std::invalid_argument);
}

TEST_CASE("nmi: degenerate entropies") {
  const auto one = window("x", {{"a", 0}, {"b", 0}, {"c", 0}});
  const auto also_one = window("y", {{"a", 3}, {"b", 3}, {"c", 3}});
  const auto split = window("z", {{"a", 0}, {"b", 1}, {"c", 1}});
  CHECK(nmi({one, also_one}) == 1.0);
  CHECK(nmi({one, split}) == 0.0);
  CHECK(nmi({split, one}) == 0.0);
}

TEST_CASE("oracle: random partition pairs match the NMI definition, symmetric and relabel-invariant") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    const int kx = 1 + rng() % 4, ky = 1 + rng() % 4;
    std::map<std::string, std::uint32_t> cx, cy;
    std::vector<std::string> members;
    for (std::size_t i = 0; i < n; ++i) {
      const auto id = "m" + std::to_string(i);
      members.push_back(id);
      cx[id] = rng() % kx;
      cy[id] = rng() % ky;
    }
    const auto x = window("x", cx), y = window("y", cy);
    const double v = nmi({x, y});
    CHECK(std::abs(v - oracle::nmi(labels_over(x, members), labels_over(y, members))) < 1e-9);
    CHECK(v == nmi({y, x}));
    auto relabeled = cx;
    for (auto& [_, c] : relabeled) c = 100 - c;
    CHECK(nmi({window("x2", relabeled), y}) == v);
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }
}

TEST_CASE("flow_table: identical partitions give a diagonal table") {
  const auto a = window("x", {{"a", 0}, {"b", 0}, {"c", 1}});
  const auto t = flow_table({a, a});
  REQUIRE(t.rows.size() == 2);
  for (const auto& r : t.rows) CHECK(r.from == r.to);
  CHECK(t.exited_count == 0);
  CHECK(t.entered_count == 0);
}

TEST_CASE("flow_table: an even split gives two equal rows") {
  const auto x = window("x", {{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}});
  const auto y = window("y", {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}});
  const auto t = flow_table({x, y});
  REQUIRE(t.rows.size() == 2);
  CHECK(t.rows[0].count == 2);
  CHECK(t.rows[1].count == 2);
}

TEST_CASE("flow_table: planted merge and split across three windows") {
  // w1: {a,b} {c,d} {e,f}; w2 merges the first two and keeps {e,f};
  // w3 splits the merged community back, and f leaves.
  const auto w1 = window("w1", {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}, {"e", 2}, {"f", 2}});
  const auto w2 = window("w2", {{"a", 0}, {"b", 0}, {"c", 0}, {"d", 0}, {"e", 1}, {"f", 1}});
  const auto w3 = window("w3", {{"a", 0}, {"b", 0}, {"c", 1}, {"d", 1}, {"e", 2}, {"g", 2}});
  const auto t12 = flow_table({w1, w2});
  const std::vector<std::tuple<int, int, int>> expected12{{0, 0, 2}, {1, 0, 2}, {2, 1, 2}};
  REQUIRE(t12.rows.size() == expected12.size());
  for (std::size_t i = 0; i < expected12.size(); ++i) {
    CHECK(t12.rows[i].from == static_cast<std::uint32_t>(std::get<0>(expected12[i])));
    CHECK(t12.rows[i].to == static_cast<std::uint32_t>(std::get<1>(expected12[i])));
    CHECK(t12.rows[i].count == static_cast<std::size_t>(std::get<2>(expected12[i])));
  }
  const auto t23 = flow_table({w2, w3});
  const std::vector<std::tuple<int, int, int>> expected23{{0, 0, 2}, {0, 1, 2}, {1, 2, 1}};
  REQUIRE(t23.rows.size() == expected23.size());
  for (std::size_t i = 0; i < expected23.size(); ++i) {
    CHECK(t23.rows[i].from == static_cast<std::uint32_t>(std::get<0>(expected23[i])));
    CHECK(t23.rows[i].to == static_cast<std::uint32_t>(std::get<1>(expected23[i])));
    CHECK(t23.rows[i].count == static_cast<std::size_t>(std::get<2>(expected23[i])));
  }
  CHECK(t23.exited_count == 1);
  CHECK(t23.entered_count == 1);
  CHECK(t23.exited_by_community.at(1) == 1);
  CHECK(t23.entered_by_community.at(2) == 1);
}

TEST_CASE("property: flow counts sum to persistence times earlier size") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::string, std::uint32_t> cx, cy;
    for (int i = 0; i < 30; ++i) {
      const auto id = "m" + std::to_string(i);
      if (rng() % 4) cx[id] = rng() % 3;
      if (rng() % 4) cy[id] = rng() % 4;
    }
    if (cx.empty()) continue;
    const auto x = window("x", cx), y = window("y", cy);
    const auto t = flow_table({x, y});
    std::size_t total = 0;
    for (const auto& r : t.rows) total += r.count;
    CHECK(std::llround(persistence({x, y}) * static_cast<double>(cx.size())) ==
          static_cast<long long>(total));
    CHECK(total + t.exited_count == cx.size());
    CHECK(total + t.entered_count == cy.size());
  }
}

}  // TEST_SUITE
