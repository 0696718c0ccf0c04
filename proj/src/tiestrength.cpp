#include "votenet/tiestrength.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <future>
#include <stdexcept>

namespace votenet {

double neighborhood_overlap(const SimilarityGraph& g, std::size_t edge) {
  if (edge >= g.edge_count()) throw std::invalid_argument("edge index out of range");
  const auto& e = g.edges()[edge];
  const auto na = g.neighbors(e.a);
  const auto nb = g.neighbors(e.b);
  std::size_t i = 0, j = 0, common = 0, either = 0;
  while (i < na.size() || j < nb.size()) {
    std::size_t v;
    if (j == nb.size() || (i < na.size() && na[i].node < nb[j].node)) {
      v = na[i++].node;
    } else if (i == na.size() || nb[j].node < na[i].node) {
      v = nb[j++].node;
    } else {
      v = na[i].node;
      ++i;
      ++j;
      ++common;
    }
    if (v != e.a && v != e.b) ++either;
  }
  if (either == 0) return 0.0;
  return static_cast<double>(common) / static_cast<double>(either);
}

double neighborhood_overlap(const SimilarityGraph& g, std::string_view a, std::string_view b) {
  const auto ia = g.node_index(a);
  const auto ib = g.node_index(b);
  const auto edge = ia && ib ? g.find_edge(*ia, *ib) : std::nullopt;
  if (!edge) {
    throw std::invalid_argument("no edge between '" + std::string(a) + "' and '" +
                                std::string(b) + "'");
  }
  return neighborhood_overlap(g, *edge);
}

std::vector<double> edge_overlaps(const SimilarityGraph& g) {
  std::vector<double> out(g.edge_count());
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = neighborhood_overlap(g, k);
  return out;
}

TieClassification classify_ties(std::span<const double> overlaps, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("overlap threshold must lie in [0, 1]");
  }
  TieClassification t;
  t.threshold = threshold;
  t.overlap.assign(overlaps.begin(), overlaps.end());
  t.label.reserve(overlaps.size());
  for (const double o : overlaps) t.label.push_back(o >= threshold ? TieLabel::Strong : TieLabel::Weak);
  return t;
}

TieClassification classify_ties(const SimilarityGraph& g, double threshold) {
  return classify_ties(edge_overlaps(g), threshold);
}

SimilarityGraph strong_tie_subgraph(const SimilarityGraph& g, const TieClassification& t) {
  if (t.label.size() != g.edge_count()) {
    throw std::invalid_argument("tie classification does not match the graph");
  }
  std::vector<char> keep(t.label.size());
  for (std::size_t k = 0; k < keep.size(); ++k) keep[k] = t.label[k] == TieLabel::Strong;
  return g.keep_edges(keep);
}

SweepCurve threshold_sweep(const SimilarityGraph& g, std::span<const double> thresholds,
                           std::uint64_t seed, unsigned restarts) {
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
      throw std::invalid_argument("sweep thresholds must be strictly increasing");
    }
  }
  const auto overlaps = edge_overlaps(g);
  SweepCurve curve;
  curve.base_members = g.node_count();

  std::vector<std::future<SweepPoint>> jobs;
  for (const double threshold : thresholds) {
    jobs.push_back(std::async(std::launch::async, [&, threshold] {
      const auto strong = strong_tie_subgraph(g, classify_ties(overlaps, threshold));
      SweepPoint point{threshold, 0.0, strong.node_count(), 0};
      if (strong.edge_count() > 0) {
        const auto p = louvain_best_of(strong, seed, restarts);
        point.modularity = p.modularity;
        point.communities = p.community_count;
      }
      return point;
    }));
  }
  for (auto& j : jobs) curve.points.push_back(j.get());
  return curve;
}

double select_threshold(const SweepCurve& curve, double min_retained_fraction) {
  if (curve.points.empty()) throw std::invalid_argument("select_threshold: empty sweep curve");
  const double floor = min_retained_fraction * static_cast<double>(curve.base_members);
  const SweepPoint* best = nullptr;
  for (const auto& p : curve.points) {
    if (static_cast<double>(p.retained_members) < floor) continue;
    if (best == nullptr || p.modularity > best->modularity ||
        (p.modularity == best->modularity && p.threshold < best->threshold)) {
      best = &p;
    }
  }
  if (best == nullptr) {
    throw std::runtime_error(
        "no sweep threshold retains the required fraction of members; choose an overlap "
        "threshold manually");
  }
  return best->threshold;
}

std::vector<double> parse_sweep_range(std::string_view spec) {
  double parts[3];
  std::size_t start = 0;
  for (int i = 0; i < 3; ++i) {
    const auto end = i < 2 ? spec.find(':', start) : spec.size();
    if (end == std::string_view::npos) {
      throw std::invalid_argument("sweep range must look like start:stop:step");
    }
    const auto token = spec.substr(start, end - start);
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), parts[i]);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw std::invalid_argument("invalid number '" + std::string(token) + "' in sweep range");
    }
    start = end + 1;
  }
  const double lo = parts[0], hi = parts[1], step = parts[2];
  if (!(step > 0.0) || hi < lo || lo < 0.0 || hi > 1.0) {
    throw std::invalid_argument("sweep range must satisfy 0 <= start <= stop <= 1 and step > 0");
  }
  std::vector<double> out;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9));
  for (std::size_t i = 0; i <= count; ++i) {
    // Round to 12 decimals so that 0.05 steps print and compare cleanly.
    const double v = std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12;
    out.push_back(std::min(v, hi));
  }
  return out;
}

}  // namespace votenet
