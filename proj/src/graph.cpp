#include "votenet/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace votenet {

SimilarityGraph::SimilarityGraph(std::string window_label, std::vector<Node> nodes,
                                 std::vector<Edge> edges)
    : window_label_(std::move(window_label)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (!lookup_.emplace(nodes_[i].id, i).second) {
      throw std::invalid_argument("duplicate node '" + nodes_[i].id + "'");
    }
  }
  for (auto& e : edges_) {
    if (e.a == e.b) throw std::invalid_argument("self-loop on node '" + nodes_[e.a].id + "'");
    if (e.a >= nodes_.size() || e.b >= nodes_.size()) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.a > e.b) std::swap(e.a, e.b);
    if (!(e.weight >= 0.0 && e.weight <= 1.0)) {
      throw std::invalid_argument("edge weight outside [0, 1]");
    }
    if (e.co_attendance == 0) throw std::invalid_argument("edge with zero co-attendance");
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const Edge& x, const Edge& y) { return std::tie(x.a, x.b) < std::tie(y.a, y.b); });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].a == edges_[i - 1].a && edges_[i].b == edges_[i - 1].b) {
      throw std::invalid_argument("duplicate edge between '" + nodes_[edges_[i].a].id + "' and '" +
                                  nodes_[edges_[i].b].id + "'");
    }
  }

  offsets_.assign(nodes_.size() + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.a + 1];
    ++offsets_[e.b + 1];
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_.back());
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    adjacency_[cursor[edges_[k].a]++] = {edges_[k].b, k};
    adjacency_[cursor[edges_[k].b]++] = {edges_[k].a, k};
  }
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[i + 1]),
              [](const Neighbor& x, const Neighbor& y) { return x.node < y.node; });
  }
}

std::optional<std::size_t> SimilarityGraph::node_index(std::string_view id) const {
  auto it = lookup_.find(std::string(id));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::size_t> SimilarityGraph::find_edge(std::size_t a, std::size_t b) const {
  if (a >= nodes_.size() || b >= nodes_.size()) return std::nullopt;
  const auto adj = neighbors(a);
  auto it = std::lower_bound(adj.begin(), adj.end(), b,
                             [](const Neighbor& n, std::size_t v) { return n.node < v; });
  if (it == adj.end() || it->node != b) return std::nullopt;
  return it->edge;
}

SimilarityGraph SimilarityGraph::keep_edges(std::span<const char> mask) const {
  if (mask.size() != edges_.size()) throw std::invalid_argument("edge mask size mismatch");
  std::vector<std::size_t> remap(nodes_.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (!mask[k]) continue;
    remap[edges_[k].a] = 0;
    remap[edges_[k].b] = 0;
  }
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (remap[i] == 0) {
      remap[i] = nodes.size();
      nodes.push_back(nodes_[i]);
    }
  }
  std::vector<Edge> edges;
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    if (!mask[k]) continue;
    Edge e = edges_[k];
    e.a = remap[e.a];
    e.b = remap[e.b];
    edges.push_back(e);
  }
  return SimilarityGraph(window_label_, std::move(nodes), std::move(edges));
}

namespace {

void pair_rows(const VoteDataset& d, std::size_t first, std::size_t last, std::vector<Edge>& out) {
  const auto n = d.members().size();
  const auto observer = instrumentation::ballot_observer();
  for (std::size_t i = first; i < last; ++i) {
    const auto ri = d.votes_of(i);
    for (std::size_t j = i + 1; j < n; ++j) {
      const auto rj = d.votes_of(j);
      std::uint32_t co = 0, agree = 0;
      for (std::size_t s = 0; s < ri.size(); ++s) {
        if (!is_counted(ri[s]) || !is_counted(rj[s])) continue;
        if (observer) {
          observer(ri[s]);
          observer(rj[s]);
        }
        ++co;
        agree += ri[s] == rj[s];
      }
      if (co == 0) continue;
      out.push_back({i, j, static_cast<double>(agree) / static_cast<double>(co), co});
    }
  }
}

}  // namespace

SimilarityGraph build_graph(const VoteDataset& d, unsigned threads) {
  const auto n = d.members().size();
  if (n < 2) throw std::invalid_argument("build_graph needs at least two members");

  std::vector<Node> nodes;
  nodes.reserve(n);
  for (const auto& m : d.members()) nodes.push_back({m.id, m.party});

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n - 1));

  // Row i pairs with n-1-i others; split rows so chunks carry similar work.
  std::vector<std::size_t> bounds{0};
  const double total = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
  double acc = 0.0;
  for (std::size_t i = 0; i < n && bounds.size() < threads; ++i) {
    acc += static_cast<double>(n - 1 - i);
    if (acc >= total * static_cast<double>(bounds.size()) / threads) bounds.push_back(i + 1);
  }
  bounds.push_back(n);

  std::vector<std::vector<Edge>> chunks(bounds.size() - 1);
  if (chunks.size() == 1) {
    pair_rows(d, 0, n, chunks[0]);
  } else {
    std::vector<std::jthread> workers;
    for (std::size_t c = 0; c < chunks.size(); ++c) {
      workers.emplace_back([&, c] { pair_rows(d, bounds[c], bounds[c + 1], chunks[c]); });
    }
  }

  std::vector<Edge> edges;
  for (auto& c : chunks) edges.insert(edges.end(), c.begin(), c.end());
  return SimilarityGraph(d.window_label(), std::move(nodes), std::move(edges));
}

std::vector<CdfPoint> weight_distribution(const SimilarityGraph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("weight_distribution: graph has no edges");
  std::vector<double> w;
  w.reserve(g.edge_count());
  for (const auto& e : g.edges()) w.push_back(e.weight);
  std::sort(w.begin(), w.end());
  std::vector<CdfPoint> out;
  const double n = static_cast<double>(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i + 1 < w.size() && w[i + 1] == w[i]) continue;
    out.push_back({w[i], static_cast<double>(i + 1) / n});
  }
  return out;
}

double percentile_cutoff(const SimilarityGraph& g, double percentile) {
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw std::invalid_argument("percentile must lie in (0, 100]");
  }
  if (g.edge_count() == 0) throw std::invalid_argument("percentile of a graph without edges");
  std::vector<double> w;
  w.reserve(g.edge_count());
  for (const auto& e : g.edges()) w.push_back(e.weight);
  std::sort(w.begin(), w.end());
  const double n = static_cast<double>(w.size());
  auto rank = static_cast<std::size_t>(std::ceil(percentile * n / 100.0));
  rank = std::clamp<std::size_t>(rank, 1, w.size());
  return w[rank - 1];
}

SimilarityGraph percentile_filter(const SimilarityGraph& g, double percentile) {
  const double cutoff = percentile_cutoff(g, percentile);
  std::vector<char> keep(g.edge_count());
  for (std::size_t k = 0; k < keep.size(); ++k) keep[k] = g.edges()[k].weight >= cutoff;
  return g.keep_edges(keep);
}

namespace {

std::size_t common_neighbors(const SimilarityGraph& g, std::size_t a, std::size_t b) {
  const auto na = g.neighbors(a);
  const auto nb = g.neighbors(b);
  std::size_t i = 0, j = 0, common = 0;
  while (i < na.size() && j < nb.size()) {
    if (na[i].node < nb[j].node) {
      ++i;
    } else if (nb[j].node < na[i].node) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

}  // namespace

GraphStats graph_stats(const SimilarityGraph& g, PathAveraging averaging) {
  const std::size_t n = g.node_count();
  if (n < 2) throw std::invalid_argument("graph_stats needs at least two nodes");

  GraphStats s;
  s.node_count = n;
  s.edge_count = g.edge_count();
  const double nd = static_cast<double>(n);
  s.avg_degree = 2.0 * static_cast<double>(s.edge_count) / nd;
  s.density = 2.0 * static_cast<double>(s.edge_count) / (nd * (nd - 1.0));

  // Components and unweighted shortest paths, one BFS per source.
  std::vector<std::size_t> component(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::size_t> dist(n);
  std::vector<std::size_t> queue(n);
  std::vector<double> comp_path_sum;
  std::vector<double> comp_pair_count;
  for (std::size_t src = 0; src < n; ++src) {
    const bool new_component = component[src] == std::numeric_limits<std::size_t>::max();
    if (new_component) {
      component[src] = comp_path_sum.size();
      comp_path_sum.push_back(0.0);
      comp_pair_count.push_back(0.0);
    }
    std::fill(dist.begin(), dist.end(), std::numeric_limits<std::size_t>::max());
    dist[src] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = src;
    double sum = 0.0, pairs = 0.0;
    while (head < tail) {
      const auto u = queue[head++];
      for (const auto& nb : g.neighbors(u)) {
        if (dist[nb.node] != std::numeric_limits<std::size_t>::max()) continue;
        dist[nb.node] = dist[u] + 1;
        component[nb.node] = component[src];
        sum += static_cast<double>(dist[nb.node]);
        pairs += 1.0;
        queue[tail++] = nb.node;
      }
    }
    comp_path_sum[component[src]] += sum;
    comp_pair_count[component[src]] += pairs;
  }
  s.connected_components = comp_path_sum.size();

  if (averaging == PathAveraging::ConnectedPairs) {
    double sum = 0.0, pairs = 0.0;
    for (std::size_t c = 0; c < comp_path_sum.size(); ++c) {
      sum += comp_path_sum[c];
      pairs += comp_pair_count[c];
    }
    s.avg_shortest_path = pairs > 0.0 ? sum / pairs : 0.0;
  } else {
    double acc = 0.0;
    std::size_t used = 0;
    for (std::size_t c = 0; c < comp_path_sum.size(); ++c) {
      if (comp_pair_count[c] == 0.0) continue;
      acc += comp_path_sum[c] / comp_pair_count[c];
      ++used;
    }
    s.avg_shortest_path = used > 0 ? acc / static_cast<double>(used) : 0.0;
  }

  // Each triangle is seen once from each of its three edges.
  std::vector<double> node_triangles(n, 0.0);
  double closed = 0.0;
  for (const auto& e : g.edges()) {
    const auto c = static_cast<double>(common_neighbors(g, e.a, e.b));
    closed += c;
    node_triangles[e.a] += c;
    node_triangles[e.b] += c;
  }
  double triplets = 0.0;
  double local_sum = 0.0;
  for (std::size_t v = 0; v < n; ++v) {
    const auto d = static_cast<double>(g.degree(v));
    const double possible = d * (d - 1.0) / 2.0;
    triplets += possible;
    // node_triangles counts each triangle at v twice (once per incident edge).
    if (possible > 0.0) local_sum += node_triangles[v] / 2.0 / possible;
  }
  s.clustering_coefficient = triplets > 0.0 ? closed / triplets : 0.0;
  s.avg_local_clustering = local_sum / nd;
  return s;
}

}  // namespace votenet
