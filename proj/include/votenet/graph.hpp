#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "votenet/ingest.hpp"

namespace votenet {

struct Node {
  std::string id;
  std::string party;
};

// Endpoints are node indices with a < b.
struct Edge {
  std::size_t a = 0;
  std::size_t b = 0;
  double weight = 0.0;
  std::uint32_t co_attendance = 0;
};

struct Neighbor {
  std::size_t node;
  std::size_t edge;
};

// Undirected weighted member-similarity graph for one window. Immutable;
// filters return new graphs.
class SimilarityGraph {
 public:
  SimilarityGraph() = default;

  // Throws std::invalid_argument on self-loops, duplicate pairs, weights
  // outside [0, 1] or zero co-attendance. Edge endpoints are normalized to
  // a < b and edges sorted by (a, b).
  SimilarityGraph(std::string window_label, std::vector<Node> nodes, std::vector<Edge> edges);

  const std::string& window_label() const { return window_label_; }
  std::span<const Node> nodes() const { return nodes_; }
  std::span<const Edge> edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  // Sorted by neighbor index.
  std::span<const Neighbor> neighbors(std::size_t node) const {
    return {adjacency_.data() + offsets_[node], offsets_[node + 1] - offsets_[node]};
  }
  std::size_t degree(std::size_t node) const { return offsets_[node + 1] - offsets_[node]; }

  std::optional<std::size_t> node_index(std::string_view id) const;
  std::optional<std::size_t> find_edge(std::size_t a, std::size_t b) const;

  // Keeps the edges whose mask entry is true, then drops nodes left without
  // any edge.
  SimilarityGraph keep_edges(std::span<const char> mask) const;

 private:
  std::string window_label_;
  std::vector<Node> nodes_;
  std::vector<Edge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Neighbor> adjacency_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

// One node per member (dataset order). Every pair that co-attended at least
// one session gets an edge weighted by the fraction of co-attended sessions in
// which both cast the identical option.
SimilarityGraph build_graph(const VoteDataset& d, unsigned threads = 0);

struct CdfPoint {
  double weight;
  double cumulative;
};

// Distinct weights in ascending order with the fraction of edges at or below.
std::vector<CdfPoint> weight_distribution(const SimilarityGraph& g);

// Nearest-rank percentile of the edge-weight multiset: the value at rank
// ceil(p/100 * N) of the ascending order.
double percentile_cutoff(const SimilarityGraph& g, double percentile);

// Drops every edge strictly below the cutoff and then the isolated nodes.
SimilarityGraph percentile_filter(const SimilarityGraph& g, double percentile);

enum class PathAveraging {
  ConnectedPairs,  // mean over all pairs that are connected
  PerComponent,    // mean of per-component means (components with >= 2 nodes)
};

struct GraphStats {
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  std::size_t connected_components = 0;
  double avg_shortest_path = 0.0;
  double avg_degree = 0.0;
  // Global transitivity: closed triplets / all connected triplets.
  double clustering_coefficient = 0.0;
  // Mean local clustering, reported alongside.
  double avg_local_clustering = 0.0;
  double density = 0.0;
};

GraphStats graph_stats(const SimilarityGraph& g,
                       PathAveraging averaging = PathAveraging::ConnectedPairs);

}  // namespace votenet
