#include "votenet/community.hpp"

#include <algorithm>
#include <limits>
#include <future>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace votenet {

std::vector<std::size_t> Partition::community_sizes() const {
  std::vector<std::size_t> sizes(community_count, 0);
  for (const auto c : community) ++sizes.at(c);
  return sizes;
}

double modularity_score(const SimilarityGraph& g, std::span<const std::uint32_t> community) {
  if (community.size() != g.node_count()) {
    throw std::invalid_argument("modularity_score: assignment does not cover every node");
  }
  if (g.edge_count() == 0) throw std::invalid_argument("modularity_score: graph has no edges");
  const std::uint32_t k = community.empty() ? 0 : *std::max_element(community.begin(), community.end()) + 1;
  std::vector<double> internal(k, 0.0), total(k, 0.0);
  double two_w = 0.0;
  for (const auto& e : g.edges()) {
    two_w += 2.0 * e.weight;
    total[community[e.a]] += e.weight;
    total[community[e.b]] += e.weight;
    if (community[e.a] == community[e.b]) internal[community[e.a]] += 2.0 * e.weight;
  }
  double q = 0.0;
  for (std::uint32_t c = 0; c < k; ++c) {
    q += internal[c] / two_w - (total[c] / two_w) * (total[c] / two_w);
  }
  return q;
}

double modularity_score(const SimilarityGraph& g, const Partition& p) {
  std::unordered_map<std::string, std::uint32_t> by_id;
  for (std::size_t i = 0; i < p.members.size(); ++i) by_id.emplace(p.members[i], p.community[i]);
  std::vector<std::uint32_t> community(g.node_count());
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    auto it = by_id.find(g.nodes()[i].id);
    if (it == by_id.end()) {
      throw std::invalid_argument("partial assignment: node '" + g.nodes()[i].id +
                                  "' has no community");
    }
    community[i] = it->second;
  }
  return modularity_score(g, community);
}

namespace {

// Weighted graph in CSR form with explicit self-loops, as produced by the
// aggregation phase.
struct LevelGraph {
  std::vector<std::size_t> offsets;
  std::vector<std::uint32_t> targets;
  std::vector<double> weights;
  std::vector<double> self_loop;

  std::size_t size() const { return self_loop.size(); }
};

LevelGraph from_similarity(const SimilarityGraph& g) {
  LevelGraph lg;
  const auto n = g.node_count();
  lg.offsets.resize(n + 1, 0);
  lg.self_loop.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    lg.offsets[i + 1] = lg.offsets[i] + g.degree(i);
    for (const auto& nb : g.neighbors(i)) {
      lg.targets.push_back(static_cast<std::uint32_t>(nb.node));
      lg.weights.push_back(g.edges()[nb.edge].weight);
    }
  }
  return lg;
}

std::vector<std::uint32_t> visit_order(std::size_t n, std::mt19937_64& rng) {
  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0u);
  for (std::size_t i = n; i > 1; --i) {
    const auto j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

// Local-move phase. Returns true if any node changed community.
bool move_nodes(const LevelGraph& lg, std::vector<std::uint32_t>& comm, std::mt19937_64& rng,
                double min_gain) {
  const auto n = lg.size();
  std::vector<double> degree(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double k = 2.0 * lg.self_loop[i];
    for (std::size_t p = lg.offsets[i]; p < lg.offsets[i + 1]; ++p) k += lg.weights[p];
    degree[i] = k;
  }
  const double m2 = std::accumulate(degree.begin(), degree.end(), 0.0);
  std::vector<double> total(degree);
  std::iota(comm.begin(), comm.end(), 0u);

  const auto order = visit_order(n, rng);
  std::vector<double> link(n, -1.0);
  std::vector<std::uint32_t> touched;
  bool any_move = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (const auto i : order) {
      const auto own = comm[i];
      touched.clear();
      for (std::size_t p = lg.offsets[i]; p < lg.offsets[i + 1]; ++p) {
        const auto c = comm[lg.targets[p]];
        if (link[c] < 0.0) {
          link[c] = 0.0;
          touched.push_back(c);
        }
        link[c] += lg.weights[p];
      }
      const double k_i = degree[i];
      total[own] -= k_i;
      const double own_link = link[own] < 0.0 ? 0.0 : link[own];
      const double own_gain = own_link - total[own] * k_i / m2;

      std::uint32_t best = own;
      double best_gain = -std::numeric_limits<double>::infinity();
      for (const auto c : touched) {
        if (c == own) continue;
        const double gain = link[c] - total[c] * k_i / m2;
        if (gain > best_gain || (gain == best_gain && c < best)) {
          best = c;
          best_gain = gain;
        }
      }
      // Modularity change of leaving `own` for `best`.
      if (best != own && 2.0 * (best_gain - own_gain) / m2 > min_gain) {
        comm[i] = best;
        moved = true;
        any_move = true;
      }
      total[comm[i]] += k_i;
      for (const auto c : touched) link[c] = -1.0;
    }
  }
  return any_move;
}

// Collapses each community into one node. `comm` is renumbered densely in
// order of first appearance.
LevelGraph aggregate(const LevelGraph& lg, std::vector<std::uint32_t>& comm) {
  const auto n = lg.size();
  std::vector<std::uint32_t> dense(n, std::numeric_limits<std::uint32_t>::max());
  std::uint32_t k = 0;
  for (auto& c : comm) {
    if (dense[c] == std::numeric_limits<std::uint32_t>::max()) dense[c] = k++;
    c = dense[c];
  }

  LevelGraph out;
  out.self_loop.assign(k, 0.0);
  std::vector<std::tuple<std::uint32_t, std::uint32_t, double>> links;
  for (std::size_t i = 0; i < n; ++i) {
    out.self_loop[comm[i]] += lg.self_loop[i];
    for (std::size_t p = lg.offsets[i]; p < lg.offsets[i + 1]; ++p) {
      const auto j = lg.targets[p];
      if (j <= i) continue;
      const auto ci = comm[i], cj = comm[j];
      if (ci == cj) {
        out.self_loop[ci] += lg.weights[p];
      } else {
        links.emplace_back(ci, cj, lg.weights[p]);
        links.emplace_back(cj, ci, lg.weights[p]);
      }
    }
  }
  std::stable_sort(links.begin(), links.end(), [](const auto& x, const auto& y) {
    return std::tie(std::get<0>(x), std::get<1>(x)) < std::tie(std::get<0>(y), std::get<1>(y));
  });
  out.offsets.assign(k + 1, 0);
  for (std::size_t p = 0; p < links.size(); ++p) {
    const auto [a, b, w] = links[p];
    if (p > 0 && std::get<0>(links[p - 1]) == a && std::get<1>(links[p - 1]) == b) {
      out.weights.back() += w;
      continue;
    }
    out.targets.push_back(b);
    out.weights.push_back(w);
    ++out.offsets[a + 1];
  }
  for (std::uint32_t c = 0; c < k; ++c) out.offsets[c + 1] += out.offsets[c];
  return out;
}

}  // namespace

Partition louvain(const SimilarityGraph& g, std::uint64_t seed, const LouvainOptions& options) {
  const auto n = g.node_count();
  Partition p;
  p.members.reserve(n);
  for (const auto& node : g.nodes()) p.members.push_back(node.id);

  std::vector<std::uint32_t> node_comm(n);
  std::iota(node_comm.begin(), node_comm.end(), 0u);

  if (g.edge_count() > 0) {
    std::mt19937_64 rng(seed);
    LevelGraph level = from_similarity(g);
    while (true) {
      std::vector<std::uint32_t> comm(level.size());
      if (!move_nodes(level, comm, rng, options.min_gain)) break;
      level = aggregate(level, comm);
      for (auto& c : node_comm) c = comm[c];
    }
  }

  // Relabel by descending size; equal sizes keep first-appearance order.
  std::map<std::uint32_t, std::pair<std::size_t, std::size_t>> info;  // id -> (size, first node)
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, inserted] = info.emplace(node_comm[i], std::make_pair(0, i));
    ++it->second.first;
  }
  std::vector<std::pair<std::uint32_t, std::pair<std::size_t, std::size_t>>> ranked(info.begin(),
                                                                                     info.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) {
    if (x.second.first != y.second.first) return x.second.first > y.second.first;
    return x.second.second < y.second.second;
  });
  std::unordered_map<std::uint32_t, std::uint32_t> relabel;
  for (std::size_t r = 0; r < ranked.size(); ++r) {
    relabel.emplace(ranked[r].first, static_cast<std::uint32_t>(r));
  }
  p.community.resize(n);
  for (std::size_t i = 0; i < n; ++i) p.community[i] = relabel.at(node_comm[i]);
  p.community_count = ranked.size();
  p.modularity = g.edge_count() > 0 ? modularity_score(g, p.community) : 0.0;
  return p;
}

Partition louvain_best_of(const SimilarityGraph& g, std::uint64_t seed, unsigned restarts,
                          const LouvainOptions& options) {
  restarts = std::max(1u, restarts);
  std::vector<std::future<Partition>> runs;
  runs.reserve(restarts);
  for (unsigned r = 0; r < restarts; ++r) {
    runs.push_back(std::async(std::launch::async, [&g, &options, s = seed + r] {
      return louvain(g, s, options);
    }));
  }
  Partition best = runs[0].get();
  for (unsigned r = 1; r < restarts; ++r) {
    Partition candidate = runs[r].get();
    if (candidate.modularity > best.modularity) best = std::move(candidate);
  }
  return best;
}

GroupAssignment community_assignment(const Partition& p) {
  GroupAssignment out;
  for (std::size_t i = 0; i < p.members.size(); ++i) {
    out.emplace(p.members[i], std::to_string(p.community[i]));
  }
  return out;
}

Partition align_partition(const SimilarityGraph& g, const Partition& p) {
  std::unordered_map<std::string, std::uint32_t> by_id;
  for (std::size_t i = 0; i < p.members.size(); ++i) by_id.emplace(p.members[i], p.community[i]);

  Partition out;
  std::map<std::uint32_t, std::uint32_t> dense;
  for (const auto& node : g.nodes()) {
    auto it = by_id.find(node.id);
    if (it == by_id.end()) {
      throw std::invalid_argument("partial assignment: node '" + node.id + "' has no community");
    }
    dense.emplace(it->second, 0);
  }
  std::uint32_t next = 0;
  for (auto& [_, v] : dense) v = next++;
  for (const auto& node : g.nodes()) {
    out.members.push_back(node.id);
    out.community.push_back(dense.at(by_id.at(node.id)));
  }
  out.community_count = dense.size();
  out.modularity = g.edge_count() > 0 ? modularity_score(g, out.community) : 0.0;
  return out;
}

}  // namespace votenet
