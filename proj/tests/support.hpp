#pragma once

#include <random>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "votenet/graph.hpp"
#include "votenet/ingest.hpp"

namespace testing {

inline votenet::VoteDataset dataset(const std::string& text, const std::string& label = "t") {
  std::istringstream in(text);
  return votenet::parse_canonical(in, label);
}

// Graph over nodes named by their string ids; parties default to "P".
inline votenet::SimilarityGraph graph(
    const std::vector<std::tuple<std::string, std::string, double>>& edges,
    std::vector<std::string> extra_nodes = {}) {
  std::vector<votenet::Node> nodes;
  auto index = [&](const std::string& id) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      if (nodes[i].id == id) return i;
    }
    nodes.push_back({id, "P"});
    return nodes.size() - 1;
  };
  std::vector<votenet::Edge> out;
  for (const auto& [a, b, w] : edges) {
    const auto ia = index(a), ib = index(b);
    out.push_back({std::min(ia, ib), std::max(ia, ib), w, 1});
  }
  for (const auto& id : extra_nodes) index(id);
  return votenet::SimilarityGraph("t", std::move(nodes), std::move(out));
}

// Erdos-Renyi style graph over n nodes "v0".."v{n-1}" with uniform weights in
// (0, 1]; nodes that end up isolated are still present.
inline votenet::SimilarityGraph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<votenet::Node> nodes;
  for (std::size_t i = 0; i < n; ++i) nodes.push_back({"v" + std::to_string(i), "P"});
  std::vector<votenet::Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (u(rng) < p) edges.push_back({i, j, 1.0 - u(rng), 1});
    }
  }
  return votenet::SimilarityGraph("r", std::move(nodes), std::move(edges));
}

}  // namespace testing
